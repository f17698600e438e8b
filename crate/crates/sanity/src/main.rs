use tightspan::{generators, subdivision};
use std::time::Instant;

fn main() {
    // matchex n=8 end to end
    let t = Instant::now();
    let d = generators::gen_matchex(8, 1).unwrap();
    println!("gen_matchex(8,1) OK in {:?}", t.elapsed());
    let t = Instant::now();
    let report = subdivision::tight_span_dimension(&d).unwrap();
    let s = subdivision::enumerate_maximal_cells(&d).unwrap();
    let vol: usize = s.maximal_cells().iter().map(|c| 1usize << (c.components().len() - 1)).sum();
    println!("matchex8: dim {} (expect 4), {} cells, volume {} (expect {}), {:?}",
        report.dimension, s.maximal_cells().len(), vol, (1usize << 7) - 8, t.elapsed());

    // random n=8
    let t = Instant::now();
    let d = generators::gen_random(8, 5).unwrap();
    println!("gen_random(8,5) in {:?}", t.elapsed());
    let t = Instant::now();
    let report = subdivision::tight_span_dimension(&d).unwrap();
    println!("random8: dim {} in {:?}", report.dimension, t.elapsed());

    // titrated full ladders
    for (n, dims) in [(6usize, vec![2usize, 3]), (7, vec![3]), (8, vec![3, 4])] {
        for target in dims {
            let t = Instant::now();
            let d = generators::gen_titrated(n, target, 1).unwrap();
            let got = generators::verification_dimension(&d).unwrap();
            println!("titrated n={n} target {target}: got {got} in {:?}", t.elapsed());
        }
    }

    // find pinned seeds where counts hit 2^(n-1)-n at n=6,7
    for n in [6usize, 7] {
        let expect = (1usize << (n - 1)) - n;
        for seed in 0..10u64 {
            let d = generators::gen_random(n, seed).unwrap();
            let s = subdivision::enumerate_maximal_cells(&d).unwrap();
            let count = s.maximal_cells().len();
            println!("n={n} seed {seed}: {count} cells (target {expect})");
        }
    }
}
