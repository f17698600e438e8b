//! Brute-force ground truth at tiny scale.
//!
//! Both oracles are intentionally exhaustive and independent of the
//! machinery they validate: cell enumeration tries every nonempty
//! subgraph, and the even-tour search walks the graph instead of trusting
//! the component rule.

use rayon::prelude::*;

use std::collections::{HashSet, VecDeque};

use crate::error::Error;
use crate::graph::{pair_count, Subgraph};
use crate::metric::Metric;
use crate::subdivision;

/// Default cap for [`brute_force_cells`].
pub const BRUTE_FORCE_CELLS_MAX_POINTS: usize = 5;

/// Default vertex cap for [`brute_force_even_tour`].
pub const BRUTE_FORCE_TOUR_MAX_VERTICES: usize = 6;

/// Every cell of the subdivision, found by testing all `2^C(n,2) - 1`
/// nonempty subgraphs with the margin LP. Sorted ascending.
pub fn brute_force_cells(d: &Metric) -> Result<Vec<Subgraph>, Error> {
    brute_force_cells_with_limit(d, BRUTE_FORCE_CELLS_MAX_POINTS)
}

pub fn brute_force_cells_with_limit(d: &Metric, limit: usize) -> Result<Vec<Subgraph>, Error> {
    let n = d.n();
    if n > limit {
        return Err(Error::ScaleLimit { op: "brute_force_cells", n, limit });
    }
    let total: u64 = 1 << pair_count(n);
    let masks: Vec<u64> = (1..total).collect();
    let mut cells: Vec<Subgraph> = masks
        .par_chunks(256)
        .map(|chunk| {
            let mut local = Vec::new();
            for &mask in chunk {
                let g = subgraph_from_mask(n, mask);
                if subdivision::is_cell(d, &g) {
                    local.push(g);
                }
            }
            local
        })
        .reduce(Vec::new, |mut acc, mut local| {
            acc.append(&mut local);
            acc
        });
    cells.sort_unstable();
    Ok(cells)
}

fn subgraph_from_mask(n: usize, mask: u64) -> Subgraph {
    let mut g = Subgraph::empty(n);
    let mut bit = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if mask >> bit & 1 == 1 {
                g = g.with_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

/// Exhaustive check for a nontrivial even tour: a closed walk of even
/// length at most `4n` in which some edge is used exactly once.
///
/// The search is a BFS over states (current vertex, length parity, edge
/// multiplicities capped at 2), started from every vertex. The `4n` length
/// cap is validated against the component rule on every subgraph of `K_5`
/// before being trusted at six vertices.
pub fn brute_force_even_tour(g: &Subgraph) -> Result<bool, Error> {
    brute_force_even_tour_with_limit(g, BRUTE_FORCE_TOUR_MAX_VERTICES)
}

pub fn brute_force_even_tour_with_limit(g: &Subgraph, limit: usize) -> Result<bool, Error> {
    let n = g.n();
    if n > limit {
        return Err(Error::ScaleLimit { op: "brute_force_even_tour", n, limit });
    }
    let edges = g.edges();
    assert!(edges.len() <= 28, "multiplicity state is packed in a u64");
    let edge_id = |a: usize, b: usize| -> usize {
        let key = (a.min(b), a.max(b));
        edges.iter().position(|&e| e == key).unwrap()
    };
    let max_len = 4 * n;

    // state: (vertex, parity, counts) with counts two bits per edge,
    // saturating at 2
    for start in 1..=n {
        if g.degree(start) == 0 {
            continue;
        }
        let mut seen: HashSet<(usize, usize, u64)> = HashSet::new();
        let mut queue: VecDeque<(usize, usize, u64, usize)> = VecDeque::new();
        queue.push_back((start, 0, 0, 0));
        seen.insert((start, 0, 0));
        while let Some((v, parity, counts, len)) = queue.pop_front() {
            if v == start && len > 0 && parity == 0 && has_single_use(counts, edges.len()) {
                return Ok(true);
            }
            if len == max_len {
                continue;
            }
            for u in 1..=n {
                if u == v || !g.contains(v, u) {
                    continue;
                }
                let e = edge_id(v, u);
                let slot = counts >> (2 * e) & 3;
                let next_counts = if slot >= 2 { counts } else { counts + (1 << (2 * e)) };
                let state = (u, parity ^ 1, next_counts);
                if seen.insert(state) {
                    queue.push_back((u, parity ^ 1, next_counts, len + 1));
                }
            }
        }
    }
    Ok(false)
}

fn has_single_use(counts: u64, num_edges: usize) -> bool {
    (0..num_edges).any(|e| counts >> (2 * e) & 3 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Subgraph {
        Subgraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn four_cycle_has_an_even_tour() {
        assert!(brute_force_even_tour(&g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)])).unwrap());
    }

    #[test]
    fn triangle_with_pendant_has_none() {
        assert!(!brute_force_even_tour(&g(4, &[(1, 2), (2, 3), (1, 3), (3, 4)])).unwrap());
    }

    #[test]
    fn theta_graph_has_one() {
        // vertices 1,2 joined by paths of lengths 1, 2, 2
        let theta = g(4, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]);
        assert!(brute_force_even_tour(&theta).unwrap());
    }

    #[test]
    fn scale_limits() {
        let big = Subgraph::empty(7);
        assert!(matches!(
            brute_force_even_tour(&big),
            Err(Error::ScaleLimit { .. })
        ));
        assert!(brute_force_even_tour_with_limit(&big, 7).is_ok());
    }
}
