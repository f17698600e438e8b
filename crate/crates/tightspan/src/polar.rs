//! The primal side: vertices and bounded faces of the polyhedron
//! `P_d = { x >= 0 : x_i + x_j >= d_ij }`, whose bounded complex is the
//! tight span itself. Deliberately oracle-grade (exhaustive enumeration,
//! small `n`): it exists to cross-check the subdivision pipeline through a
//! completely independent computation, not to scale.
//!
//! Interior cells of the subdivision correspond to bounded faces of `P_d`
//! whose tight constraints are metric rows only (no `x_i = 0` rows) and do
//! not form a star; the crosscheck measures this correspondence rather
//! than assuming it.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::Error;
use crate::exactlp::{self, LinearProgram};
use crate::graph::Subgraph;
use crate::linalg;
use crate::metric::Metric;
use crate::rational::{int, Rational};
use crate::subdivision;


/// Default point-count cap for the exhaustive polar computations.
pub const POLAR_MAX_POINTS: usize = 6;

/// The constraint rows of `P_d`: first the `n` nonnegativity rows
/// `x_i >= 0`, then the `C(n,2)` metric rows `x_i + x_j >= d_ij` in
/// lexicographic pair order.
#[derive(Debug, Clone)]
pub struct PolyhedronPd {
    metric: Metric,
}

/// Label of one constraint row of `P_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    /// `x_i >= 0`, 1-based point.
    NonNeg(usize),
    /// `x_i + x_j >= d_ij`.
    Pair(usize, usize),
}

impl PolyhedronPd {
    pub fn new(metric: Metric) -> Self {
        PolyhedronPd { metric }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn row_count(&self) -> usize {
        let n = self.metric.n();
        n + n * (n - 1) / 2
    }

    pub fn row_label(&self, row: usize) -> RowLabel {
        let n = self.metric.n();
        if row < n {
            RowLabel::NonNeg(row + 1)
        } else {
            let mut k = row - n;
            for i in 1..=n {
                let in_row = n - i;
                if k < in_row {
                    return RowLabel::Pair(i, i + 1 + k);
                }
                k -= in_row;
            }
            unreachable!("row index out of range")
        }
    }

    /// Coefficients and right-hand side of `row` as `a·x >= b`.
    pub fn row(&self, row: usize) -> (Vec<Rational>, Rational) {
        let n = self.metric.n();
        let mut coeffs = vec![int(0); n];
        match self.row_label(row) {
            RowLabel::NonNeg(i) => {
                coeffs[i - 1] = int(1);
                (coeffs, int(0))
            }
            RowLabel::Pair(i, j) => {
                coeffs[i - 1] = int(1);
                coeffs[j - 1] = int(1);
                (coeffs, self.metric.distance(i, j).clone())
            }
        }
    }

    fn satisfies(&self, x: &[Rational], row: usize) -> bool {
        let (coeffs, rhs) = self.row(row);
        let lhs: Rational = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        lhs >= rhs
    }

    fn tight(&self, x: &[Rational], row: usize) -> bool {
        let (coeffs, rhs) = self.row(row);
        let lhs: Rational = coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        lhs == rhs
    }
}

/// A face of `P_d` holding at least one vertex, described by its vertex
/// indices and its full tight-row set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFace {
    /// Indices into the complex's vertex list, ascending.
    pub vertices: Vec<usize>,
    /// Affine dimension of the face.
    pub dimension: usize,
    /// Metric rows tight on the whole face, as a subgraph.
    pub tight_edges: Subgraph,
    /// Points whose `x_i = 0` row is tight on the whole face.
    pub tight_nonneg: Vec<usize>,
}

/// All vertices and bounded faces of `P_d`.
#[derive(Debug, Clone)]
pub struct BoundedFaceComplex {
    pub vertices: Vec<Vec<Rational>>,
    pub faces: Vec<BoundedFace>,
    pub max_dim: usize,
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(current.clone());
        // advance to the next k-combination of [m]
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + m - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// All vertices of `P_d`, by solving every `n`-subset of constraint rows
/// as an equality system and keeping the feasible solutions. Capped at
/// `n <= limit` (default [`POLAR_MAX_POINTS`]).
pub fn pd_vertices(d: &Metric) -> Result<Vec<Vec<Rational>>, Error> {
    pd_vertices_with_limit(d, POLAR_MAX_POINTS)
}

pub fn pd_vertices_with_limit(d: &Metric, limit: usize) -> Result<Vec<Vec<Rational>>, Error> {
    let n = d.n();
    if n > limit {
        return Err(Error::ScaleLimit { op: "pd_vertices", n, limit });
    }
    let pd = PolyhedronPd::new(d.clone());
    let rows = pd.row_count();
    let combos = combinations(rows, n);
    let found: BTreeSet<Vec<Rational>> = combos
        .par_chunks(512)
        .map(|chunk| {
            let mut local: BTreeSet<Vec<Rational>> = BTreeSet::new();
            for combo in chunk {
                let mut a = Vec::with_capacity(n);
                let mut b = Vec::with_capacity(n);
                for &r in combo {
                    let (coeffs, rhs) = pd.row(r);
                    a.push(coeffs);
                    b.push(rhs);
                }
                let Some(x) = linalg::solve_square(&a, &b) else {
                    continue;
                };
                if (0..rows).all(|r| pd.satisfies(&x, r)) {
                    local.insert(x);
                }
            }
            local
        })
        .reduce(BTreeSet::new, |mut acc, local| {
            acc.extend(local);
            acc
        });
    Ok(found.into_iter().collect())
}

/// The complex of bounded faces of `P_d`. Faces are generated as closures
/// of vertex sets under intersection of tight-row sets; a face is bounded
/// iff its recession LP is infeasible.
pub fn bounded_face_complex(d: &Metric) -> Result<BoundedFaceComplex, Error> {
    bounded_face_complex_with_limit(d, POLAR_MAX_POINTS)
}

pub fn bounded_face_complex_with_limit(
    d: &Metric,
    limit: usize,
) -> Result<BoundedFaceComplex, Error> {
    let n = d.n();
    if n > limit {
        return Err(Error::ScaleLimit { op: "bounded_face_complex", n, limit });
    }
    let pd = PolyhedronPd::new(d.clone());
    let rows = pd.row_count();
    assert!(rows <= 128, "row masks are 128 bits wide");
    let vertices = pd_vertices_with_limit(d, limit)?;
    let active: Vec<u128> = vertices
        .iter()
        .map(|x| {
            let mut mask = 0u128;
            for r in 0..rows {
                if pd.tight(x, r) {
                    mask |= 1 << r;
                }
            }
            mask
        })
        .collect();

    // Closure of the vertex tight-sets under intersection. Every face with
    // a vertex arises as {x : rows of S tight} for S an intersection of
    // vertex tight-sets; faces are keyed by their vertex index set.
    let mut queue: VecDeque<u128> = active.iter().copied().collect();
    let mut tried: HashSet<u128> = queue.iter().copied().collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut faces_raw: Vec<(Vec<usize>, u128)> = Vec::new();
    while let Some(mask) = queue.pop_front() {
        let members: Vec<usize> = (0..vertices.len())
            .filter(|&v| active[v] & mask == mask)
            .collect();
        let canonical = members.iter().fold(!0u128, |acc, &v| acc & active[v]);
        if seen.insert(members.clone()) {
            for v in 0..vertices.len() {
                if active[v] & mask != mask {
                    let next = canonical & active[v];
                    if tried.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            faces_raw.push((members, canonical));
        }
    }

    let mut faces = Vec::new();
    let mut max_dim = 0;
    for (members, canonical) in faces_raw {
        if !face_is_bounded(&pd, canonical) {
            continue;
        }
        let dimension = affine_dimension(&vertices, &members);
        let mut tight_edges = Subgraph::empty(n);
        let mut tight_nonneg = Vec::new();
        for r in 0..rows {
            if canonical >> r & 1 == 1 {
                match pd.row_label(r) {
                    RowLabel::NonNeg(i) => tight_nonneg.push(i),
                    RowLabel::Pair(i, j) => tight_edges = tight_edges.with_edge(i, j),
                }
            }
        }
        max_dim = max_dim.max(dimension);
        faces.push(BoundedFace { vertices: members, dimension, tight_edges, tight_nonneg });
    }
    faces.sort_by(|a, b| (a.dimension, &a.vertices).cmp(&(b.dimension, &b.vertices)));
    Ok(BoundedFaceComplex { vertices, faces, max_dim })
}

/// A face is bounded iff its recession cone is trivial: no `r >= 0` with
/// `Σ r_i = 1` keeps every tight row tight (`r_i = 0` on tight
/// nonnegativity rows, `r_i + r_j = 0` on tight metric rows).
fn face_is_bounded(pd: &PolyhedronPd, tight_mask: u128) -> bool {
    let n = pd.metric().n();
    let mut lp = LinearProgram::new(n, vec![int(0); n]);
    for r in 0..pd.row_count() {
        if tight_mask >> r & 1 == 1 {
            let (coeffs, _) = pd.row(r);
            lp.add_equality(coeffs, int(0));
        }
    }
    lp.add_equality(vec![int(1); n], int(1));
    exactlp::find_feasible(&lp).is_none()
}

fn affine_dimension(vertices: &[Vec<Rational>], members: &[usize]) -> usize {
    if members.len() <= 1 {
        return 0;
    }
    let base = &vertices[members[0]];
    let diffs: Vec<Vec<Rational>> = members[1..]
        .iter()
        .map(|&v| vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&diffs)
}

/// Largest dimension of a bounded face all of whose tight constraints are
/// metric rows. For `n >= 4` this equals the subdivision dimension; for
/// `n = 3` it reports the geometric tight-span dimension 1 that the
/// interior-cell convention misses.
pub fn metric_row_dimension(d: &Metric) -> Result<usize, Error> {
    let complex = bounded_face_complex(d)?;
    Ok(complex
        .faces
        .iter()
        .filter(|f| f.tight_nonneg.is_empty())
        .map(|f| f.dimension)
        .max()
        .unwrap_or(0))
}

/// Agreement report between the two dimension computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCrosscheck {
    /// Max dimension over metric-row-only bounded faces of `P_d`.
    pub polar_dim: usize,
    /// Interior-cell dimension from the subdivision pipeline.
    pub subdivision_dim: usize,
    pub agree: bool,
    /// Max dimension over all bounded faces, for documentation; can exceed
    /// `polar_dim` only through faces touching `x_i = 0` rows.
    pub bounded_complex_dim: usize,
}

/// Runs both pipelines and compares: the metric-row-only bounded-face
/// dimension of `P_d` against the subdivision's interior-cell dimension.
/// Requires `4 <= n <= limit`.
pub fn crosscheck_dimension(d: &Metric) -> Result<DimensionCrosscheck, Error> {
    crosscheck_dimension_with_limit(d, POLAR_MAX_POINTS)
}

pub fn crosscheck_dimension_with_limit(
    d: &Metric,
    limit: usize,
) -> Result<DimensionCrosscheck, Error> {
    let n = d.n();
    if n < 4 {
        return Err(Error::UnsupportedPointCount { op: "crosscheck_dimension", n, min: 4 });
    }
    if n > limit {
        return Err(Error::ScaleLimit { op: "crosscheck_dimension", n, limit });
    }
    let report = subdivision::tight_span_dimension(d)?;
    let complex = bounded_face_complex_with_limit(d, limit)?;
    let polar_dim = complex
        .faces
        .iter()
        .filter(|f| f.tight_nonneg.is_empty())
        .map(|f| f.dimension)
        .max()
        .unwrap_or(0);
    Ok(DimensionCrosscheck {
        polar_dim,
        subdivision_dim: report.dimension,
        agree: polar_dim == report.dimension,
        bounded_complex_dim: complex.max_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::collections::BTreeMap;

    fn metric(n: usize, entries: &[((usize, usize), Rational)]) -> Metric {
        let map: BTreeMap<(usize, usize), Rational> = entries.iter().cloned().collect();
        Metric::new(n, &map).unwrap()
    }

    fn equilateral3() -> Metric {
        metric(3, &[((1, 2), rat(3, 2)), ((1, 3), rat(3, 2)), ((2, 3), rat(3, 2))])
    }

    #[test]
    fn vertices_of_the_equilateral_tripod() {
        let vertices = pd_vertices(&equilateral3()).unwrap();
        let expect: BTreeSet<Vec<Rational>> = [
            vec![rat(3, 4), rat(3, 4), rat(3, 4)],
            vec![int(0), rat(3, 2), rat(3, 2)],
            vec![rat(3, 2), int(0), rat(3, 2)],
            vec![rat(3, 2), rat(3, 2), int(0)],
        ]
        .into_iter()
        .collect();
        assert_eq!(vertices.into_iter().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn two_point_segment() {
        let d = metric(2, &[((1, 2), int(1))]);
        let vertices = pd_vertices(&d).unwrap();
        assert_eq!(
            vertices,
            vec![vec![int(0), int(1)], vec![int(1), int(0)]]
        );
        let complex = bounded_face_complex(&d).unwrap();
        assert_eq!(complex.max_dim, 1);
        let segments: Vec<_> = complex.faces.iter().filter(|f| f.dimension == 1).collect();
        assert_eq!(segments.len(), 1);
        assert_eq!(segments[0].tight_edges.edges(), vec![(1, 2)]);
    }

    #[test]
    fn tripod_has_three_legs() {
        let complex = bounded_face_complex(&equilateral3()).unwrap();
        assert_eq!(complex.vertices.len(), 4);
        assert_eq!(complex.max_dim, 1);
        let legs: Vec<_> = complex.faces.iter().filter(|f| f.dimension == 1).collect();
        assert_eq!(legs.len(), 3);
        for leg in &legs {
            // legs are star cells: two metric rows at a common point
            assert!(leg.tight_nonneg.is_empty());
            assert!(leg.tight_edges.is_star());
        }
        assert_eq!(metric_row_dimension(&equilateral3()).unwrap(), 1);
    }

    #[test]
    fn scale_limit_is_enforced() {
        let d = crate::generators::gen_matchex(4, 1).unwrap();
        assert!(matches!(
            pd_vertices_with_limit(&d, 3),
            Err(Error::ScaleLimit { .. })
        ));
        assert!(matches!(
            crosscheck_dimension(&equilateral3()),
            Err(Error::UnsupportedPointCount { .. })
        ));
    }

    #[test]
    fn combinations_enumerate_choose() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 4).len(), 0);
        let all = combinations(6, 3);
        assert_eq!(all.len(), 20);
        let set: HashSet<Vec<usize>> = all.into_iter().collect();
        assert_eq!(set.len(), 20);
    }
}
