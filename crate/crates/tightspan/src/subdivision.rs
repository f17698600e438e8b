//! The regular subdivision of the second hypersimplex induced by a metric,
//! and the tight span's combinatorial dimension.
//!
//! Lifting each hypersimplex vertex `e_i + e_j` to height `d_ij` and
//! projecting the upper faces subdivides `Δ(n,2)`. A subgraph `G` labels a
//! cell exactly when some `x ∈ R^n` satisfies `x_i + x_j = d_ij` on `G`'s
//! edges and `x_i + x_j > d_ij` off them. For a generic metric every cell
//! is a simplex, the maximal cells have `n` edges, and the dimension of
//! the tight span equals the maximal codimension `n - |E|` over interior
//! cells (spanning, not a star).
//!
//! Maximal cells are enumerated by walking the dual graph: remove an edge
//! of a known cell to get a ridge; when the ridge is interior, the unique
//! other maximal cell containing it is found by probing the `O(C(n,2))`
//! one-edge extensions. Each probe solves the cell's square equality
//! system directly and falls back to the margin LP only for singular
//! (affinely dependent) candidates — which are precisely the non-simplex
//! witnesses that make a metric non-generic.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, NonGenericCertificate};
use crate::exactlp;
use crate::generators::SplitMix64;
use crate::graph::Subgraph;
use crate::linalg;
use crate::matching::{self, Weights};
use crate::metric::Metric;
use crate::rational::{int, rat, Rational};
use num_traits::Signed;

/// A cell of the subdivision, labeled by its subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub graph: Subgraph,
    /// One less than the number of edges (the cell is a simplex on the
    /// lifted vertices of its edges).
    pub dimension: usize,
    /// Whether the cell avoids all hypersimplex facets, i.e. its graph is
    /// spanning and not a star.
    pub interior: bool,
}

/// The set of maximal cells of a generic metric's subdivision.
#[derive(Debug, Clone)]
pub struct Subdivision {
    metric: Metric,
    maximal_cells: Vec<Subgraph>,
    generic: bool,
}

impl Subdivision {
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    /// Maximal cells in ascending `Subgraph` order.
    pub fn maximal_cells(&self) -> &[Subgraph] {
        &self.maximal_cells
    }

    /// Always true for a successfully enumerated subdivision: every failed
    /// genericity check aborts the enumeration with a certificate instead.
    pub fn generic(&self) -> bool {
        self.generic
    }
}

/// Dimension report for the tight span of a generic metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightSpanReport {
    /// `n - min_interior_edges`, the maximal codimension of an interior
    /// cell. For `n = 3` this reports 0 (the triangle is the only interior
    /// cell) even though the geometric tight span is 1-dimensional; see
    /// the polar module for the bounded-complex view.
    pub dimension: usize,
    pub min_interior_edges: usize,
    /// Count of interior faces per codimension, index 0 holding the
    /// maximal cells.
    pub interior_f_vector: Vec<usize>,
    /// An interior cell attaining the maximal codimension (the smallest
    /// such in subgraph order).
    pub witness: Subgraph,
}

/// Genericity verdict with an optional certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    NonGeneric(Box<NonGenericCertificate>),
}

impl Genericity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Genericity::Generic)
    }

    pub fn certificate(&self) -> Option<&NonGenericCertificate> {
        match self {
            Genericity::Generic => None,
            Genericity::NonGeneric(cert) => Some(cert),
        }
    }
}

/// Whether the nonempty subgraph `g` labels a cell of the subdivision:
/// some `x` satisfies `x_i + x_j = d_ij` on `g` and `x_i + x_j > d_ij`
/// elsewhere. Decided by the exact margin LP.
pub fn is_cell(d: &Metric, g: &Subgraph) -> bool {
    assert_eq!(d.n(), g.n());
    assert!(!g.is_empty(), "is_cell requires a nonempty subgraph");
    let n = d.n();
    let mut equalities = Vec::new();
    let mut strict = Vec::new();
    for (i, j) in d.pairs() {
        let mut row = vec![int(0); n];
        row[i - 1] = int(1);
        row[j - 1] = int(1);
        let rhs = d.distance(i, j).clone();
        if g.contains(i, j) {
            equalities.push((row, rhs));
        } else {
            strict.push((row, rhs));
        }
    }
    exactlp::feasible_with_margin(n, &equalities, &strict, &int(1)).is_some()
}

/// Fast cell test for an `n`-edge candidate built over an affinely
/// independent ridge. Candidates whose components are not all
/// odd-unicyclic have affinely dependent lifted vertices and can never be
/// cells here: a dependent `n`-vertex face would have the same dimension
/// as the ridge it properly contains. The remaining candidates have a
/// nonsingular equality system; solve it and check the off-graph slacks.
fn maximal_cell_probe(d: &Metric, g: &Subgraph) -> bool {
    let n = d.n();
    debug_assert_eq!(g.edge_count(), n);
    let all_odd_unicyclic = g
        .classify_components()
        .iter()
        .all(|k| matches!(k, crate::graph::ComponentKind::UnicyclicOdd { .. }));
    if !all_odd_unicyclic {
        return false;
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for (i, j) in g.edges() {
        let mut row = vec![int(0); n];
        row[i - 1] = int(1);
        row[j - 1] = int(1);
        a.push(row);
        b.push(d.distance(i, j).clone());
    }
    let x = linalg::solve_square(&a, &b)
        .expect("odd-unicyclic incidence systems are nonsingular");
    for (i, j) in d.pairs() {
        if g.contains(i, j) {
            continue;
        }
        let slack = &x[i - 1] + &x[j - 1] - d.distance(i, j);
        if !slack.is_positive() {
            return false;
        }
    }
    true
}

/// Locates a maximal cell by point location at perturbed weights
/// `ω_i = 1 + i·δ`, halving δ until the support has exactly `n` edges and
/// a unique optimum.
///
/// The plain multipliers `(1, ..., n)` can lie in the span of a
/// lower-dimensional cell for every δ at once (for the 4-point matching
/// family the direction stays on the cell `{13, 24, 34}`, because
/// `1 + 4 = 2 + 3`), so after the halving budget the binary-power variants
/// are tried before a failure is reported.
pub fn initial_maximal_cell(d: &Metric) -> Result<Subgraph, Error> {
    initial_cell_any_variant(d)
}

/// Point location with an explicit perturbation variant, mainly for
/// validating that the traversal result does not depend on the starting
/// cell. Variant 0 is the plain assignment `ω_i = 1 + i·δ`. Variant 1 uses
/// binary-power multipliers `ω_i = 1 + 2^{i-1}·δ`: a perturbed point lies
/// on a lower-dimensional cell only when some tree component of that
/// cell's graph has equal bipartition sums of `ω`, and distinct
/// subset sums rule that out for all but finitely many δ. Variants >= 2
/// shuffle the binary multipliers with the seeded stream.
///
/// δ starts at `1/(10n²)` and halves on every retry until the located
/// support has exactly `n` edges and a unique optimum (16 attempts).
pub fn initial_maximal_cell_variant(d: &Metric, variant: u64) -> Result<Subgraph, Error> {
    let n = d.n();
    if n < 3 {
        return Err(Error::UnsupportedPointCount { op: "initial_maximal_cell", n, min: 3 });
    }
    let mut multipliers: Vec<i64> = match variant {
        0 => (1..=n as i64).collect(),
        _ => (0..n as u32).map(|i| 1i64 << i).collect(),
    };
    if variant >= 2 {
        let mut stream = SplitMix64::new(variant);
        stream.shuffle(&mut multipliers);
    }
    let mut delta = rat(1, (10 * n * n) as i64);
    let mut last_non_generic = None;
    for _ in 0..16 {
        let omega = Weights::new(
            multipliers.iter().map(|&m| int(1) + &delta * int(m)).collect(),
        )?;
        match matching::point_cell(d, &omega) {
            Ok(support) if support.edge_count() == n => return Ok(support),
            Ok(_) => {} // landed on a lower-dimensional cell; shrink δ
            Err(err @ Error::NonGeneric(_)) => last_non_generic = Some(err),
            Err(other) => return Err(other),
        }
        delta /= int(2);
    }
    Err(last_non_generic.unwrap_or_else(|| {
        Error::non_generic(NonGenericCertificate::PointLocationFailed { attempts: 16 })
    }))
}

/// The default perturbation direction can in principle be parallel to a
/// low-dimensional cell, so the traversal tries a few shuffled variants
/// before giving up.
fn initial_cell_any_variant(d: &Metric) -> Result<Subgraph, Error> {
    let mut first_err = None;
    for variant in 0..4 {
        match initial_maximal_cell_variant(d, variant) {
            Ok(cell) => return Ok(cell),
            Err(err) => {
                if first_err.is_none() {
                    first_err = Some(err);
                }
            }
        }
    }
    Err(first_err.expect("at least one variant ran"))
}

/// Enumerates all maximal cells of a generic metric's subdivision by
/// breadth-first traversal of the dual graph. Non-generic metrics abort
/// with a concrete certificate.
pub fn enumerate_maximal_cells(d: &Metric) -> Result<Subdivision, Error> {
    if d.n() == 2 {
        // Δ(2,2) is a single point; its one cell is the edge {1,2}.
        return Ok(Subdivision {
            metric: d.clone(),
            maximal_cells: vec![Subgraph::complete(2)],
            generic: true,
        });
    }
    let start = initial_cell_any_variant(d)?;
    enumerate_maximal_cells_from(d, start)
}

/// Traversal from an explicitly given starting cell; used to validate that
/// the enumerated set is independent of the initial point location.
pub fn enumerate_maximal_cells_from(d: &Metric, start: Subgraph) -> Result<Subdivision, Error> {
    let n = d.n();
    assert!(n >= 3, "dual-graph traversal needs n >= 3");
    assert_eq!(start.n(), n);
    assert_eq!(start.edge_count(), n, "a maximal cell has n edges");
    if let Some(walk) = start.find_even_tour() {
        return Err(Error::non_generic(NonGenericCertificate::EvenTour { graph: start, walk }));
    }
    if !maximal_cell_probe(d, &start) {
        return Err(Error::non_generic(NonGenericCertificate::PointLocationFailed {
            attempts: 0,
        }));
    }

    let mut cells: BTreeSet<Subgraph> = BTreeSet::new();
    cells.insert(start);
    let mut probed: HashSet<Subgraph> = HashSet::new();
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        // Gather this level's unprobed interior ridges.
        let mut batch: Vec<(Subgraph, Subgraph, (usize, usize))> = Vec::new();
        for cell in &frontier {
            for (a, b) in cell.edges() {
                let ridge = cell.without_edge(a, b);
                if !ridge.is_spanning() || ridge.is_star() {
                    continue; // boundary ridge
                }
                if probed.insert(ridge) {
                    batch.push((ridge, *cell, (a, b)));
                }
            }
        }
        // Ridge probes are independent pure solves; the batch may run in
        // parallel. Results are consumed in batch order, so the outcome is
        // deterministic regardless of scheduling.
        let results: Vec<Result<Option<Subgraph>, Error>> = batch
            .par_iter()
            .map(|(ridge, parent, _)| probe_ridge(d, ridge, parent))
            .collect();
        let mut next = Vec::new();
        for ((ridge, parent, removed), result) in batch.iter().zip(results) {
            match result? {
                Some(neighbor) => {
                    if cells.insert(neighbor) {
                        next.push(neighbor);
                    }
                }
                None => return Err(diagnose_missing_neighbor(d, parent, ridge, *removed)),
            }
        }
        frontier = next;
    }
    Ok(Subdivision {
        metric: d.clone(),
        maximal_cells: cells.into_iter().collect(),
        generic: true,
    })
}

/// Finds the maximal cell on the far side of an interior ridge by testing
/// every one-edge extension outside the parent cell. A generic subdivision
/// has exactly one.
fn probe_ridge(
    d: &Metric,
    ridge: &Subgraph,
    parent: &Subgraph,
) -> Result<Option<Subgraph>, Error> {
    let mut found: Vec<Subgraph> = Vec::new();
    for (i, j) in d.pairs() {
        if parent.contains(i, j) {
            continue;
        }
        let candidate = ridge.with_edge(i, j);
        if maximal_cell_probe(d, &candidate) {
            found.push(candidate);
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(Some(found[0])),
        _ => Err(Error::non_generic(NonGenericCertificate::AmbiguousRidge {
            ridge: *ridge,
            cells: found,
        })),
    }
}

/// An interior ridge with no simplex neighbor means the cell on the far
/// side is not a simplex. This produces a concrete certificate by locating
/// that cell: query points just past the ridge's barycenter, away from the
/// vertex of the parent cell that was removed.
fn diagnose_missing_neighbor(
    d: &Metric,
    parent: &Subgraph,
    ridge: &Subgraph,
    removed: (usize, usize),
) -> Error {
    let n = d.n();
    let m = int(ridge.edge_count() as i64);
    let barycenter: Vec<Rational> =
        (1..=n).map(|v| int(ridge.degree(v) as i64) / &m).collect();
    let mut eps = rat(1, 4 * n as i64);
    for _ in 0..16 {
        let omega: Vec<Rational> = (1..=n)
            .map(|v| {
                let lifted = if v == removed.0 || v == removed.1 { int(1) } else { int(0) };
                &barycenter[v - 1] + &eps * (&barycenter[v - 1] - lifted)
            })
            .collect();
        if omega.iter().all(|w| w.is_positive()) {
            let weights = Weights::new(omega).expect("positive weights");
            match matching::point_cell(d, &weights) {
                Err(err @ Error::NonGeneric(_)) => return err,
                Err(other) => return other,
                Ok(support) => {
                    if ridge.is_subset_of(&support) && support != *parent {
                        // A unique LP vertex has at most n positive edges,
                        // so an n-edge support here contradicts the probe
                        // sweep that found none.
                        return Error::non_generic(NonGenericCertificate::AmbiguousRidge {
                            ridge: *ridge,
                            cells: vec![*parent, support],
                        });
                    }
                }
            }
        }
        eps /= int(2);
    }
    Error::non_generic(NonGenericCertificate::PointLocationFailed { attempts: 16 })
}

/// Genericity verdict: the subdivision enumerates without a certificate
/// and, independently, no maximal cell admits a nontrivial even tour. The
/// two criteria must agree; any even tour that slips past the LP-side
/// checks is still reported.
pub fn is_generic(d: &Metric) -> Genericity {
    match enumerate_maximal_cells(d) {
        Err(Error::NonGeneric(cert)) => Genericity::NonGeneric(cert),
        Err(other) => unreachable!("enumeration failed without a certificate: {other}"),
        Ok(subdivision) => {
            for cell in subdivision.maximal_cells() {
                if let Some(walk) = cell.find_even_tour() {
                    return Genericity::NonGeneric(Box::new(NonGenericCertificate::EvenTour {
                        graph: *cell,
                        walk,
                    }));
                }
            }
            Genericity::Generic
        }
    }
}

/// All interior faces of the subdivision: distinct subsets of maximal
/// cells' edge sets (every subset of a simplex cell is a face) that are
/// spanning and not a star.
pub fn interior_faces(s: &Subdivision) -> Vec<Cell> {
    let mut set: BTreeSet<Subgraph> = BTreeSet::new();
    for cell in &s.maximal_cells {
        let edges = cell.edges();
        for mask in 1u32..(1u32 << edges.len()) {
            let mut g = Subgraph::empty(s.n());
            for (bit, &(a, b)) in edges.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g = g.with_edge(a, b);
                }
            }
            if g.is_spanning() && !g.is_star() {
                set.insert(g);
            }
        }
    }
    set.into_iter()
        .map(|graph| Cell { dimension: graph.edge_count() - 1, interior: true, graph })
        .collect()
}

/// The combinatorial dimension of the tight span: the maximal codimension
/// `n - |E|` over interior faces, with the f-vector and a witness cell.
pub fn tight_span_dimension(d: &Metric) -> Result<TightSpanReport, Error> {
    let n = d.n();
    if n < 3 {
        return Err(Error::UnsupportedPointCount { op: "tight_span_dimension", n, min: 3 });
    }
    let s = enumerate_maximal_cells(d)?;
    let faces = interior_faces(&s);
    let min_edges = faces
        .iter()
        .map(|c| c.graph.edge_count())
        .min()
        .expect("maximal cells are interior");
    let dimension = n - min_edges;
    let mut f_vector = vec![0usize; dimension + 1];
    for cell in &faces {
        f_vector[n - cell.graph.edge_count()] += 1;
    }
    let witness = faces
        .iter()
        .map(|c| c.graph)
        .filter(|g| g.edge_count() == min_edges)
        .min()
        .unwrap();
    Ok(TightSpanReport { dimension, min_interior_edges: min_edges, interior_f_vector: f_vector, witness })
}
