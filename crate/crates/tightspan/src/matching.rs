//! Fractional matchings and the LP that drives the whole toolkit.
//!
//! A fractional ω-matching assigns a nonnegative weight `c_ij` to every
//! edge of `K_n` so that the weights at each vertex `i` sum to `ω_i`. The
//! LP-optimal ones — those maximizing `Σ c_ij d_ij` — have supports that
//! are exactly the cells of the regular subdivision induced by the metric
//! `d`, which is how every cell query here bottoms out in a linear
//! program.

use crate::error::{Error, NonGenericCertificate};
use crate::exactlp::{self, LinearProgram, LpStatus};
use crate::graph::{pair_count, pair_index, ComponentKind, Subgraph};
use crate::metric::Metric;
use crate::rational::{int, rat, Rational};
use num_traits::{One, Signed, Zero};

/// Prescribed vertex weights `ω >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    omega: Vec<Rational>,
}

impl Weights {
    /// Validates nonnegativity; `omega[k]` is the weight of point `k+1`.
    pub fn new(omega: Vec<Rational>) -> Result<Self, Error> {
        assert!(!omega.is_empty());
        for (k, w) in omega.iter().enumerate() {
            if w.is_negative() {
                return Err(Error::NegativeWeight { index: k + 1 });
            }
        }
        Ok(Weights { omega })
    }

    /// The all-ones vector, the weights of a fractional 1-matching.
    pub fn ones(n: usize) -> Self {
        Weights { omega: vec![int(1); n] }
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    /// Weight of point `i` (1-based).
    pub fn get(&self, i: usize) -> &Rational {
        &self.omega[i - 1]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.omega
    }

    /// Half the L1 norm, `(Σ ω_i)/2`. Recomputed on every call, never
    /// stored.
    pub fn half_norm(&self) -> Rational {
        self.omega.iter().sum::<Rational>() * rat(1, 2)
    }
}

/// Nonnegative edge weights on `K_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching {
    n: usize,
    c: Vec<Rational>, // lexicographic pair order
}

impl FractionalMatching {
    /// The zero matching.
    pub fn zero(n: usize) -> Self {
        FractionalMatching { n, c: vec![int(0); pair_count(n)] }
    }

    /// Builds a matching from `((i, j), weight)` entries; missing edges get
    /// weight zero. Rejects negative weights.
    pub fn new(n: usize, entries: &[((usize, usize), Rational)]) -> Result<Self, Error> {
        let mut m = FractionalMatching::zero(n);
        for ((i, j), w) in entries {
            if w.is_negative() {
                return Err(Error::NegativeWeight { index: *i });
            }
            let idx = pair_index(n, i.min(j) - 1, i.max(j) - 1);
            m.c[idx] = w.clone();
        }
        Ok(m)
    }

    /// Indicator matching of a subgraph: weight 1 on its edges.
    pub fn indicator(g: &Subgraph) -> Self {
        let mut m = FractionalMatching::zero(g.n());
        for (i, j) in g.edges() {
            m.c[pair_index(g.n(), i - 1, j - 1)] = int(1);
        }
        m
    }

    pub(crate) fn from_point(n: usize, point: &[Rational]) -> Self {
        assert_eq!(point.len(), pair_count(n));
        FractionalMatching { n, c: point.to_vec() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of the edge `{i,j}` (1-based).
    pub fn weight(&self, i: usize, j: usize) -> &Rational {
        &self.c[pair_index(self.n, i.min(j) - 1, i.max(j) - 1)]
    }

    /// Edges with strictly positive weight.
    pub fn support(&self) -> Subgraph {
        let mut g = Subgraph::empty(self.n);
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.weight(i, j).is_positive() {
                    g = g.with_edge(i, j);
                }
            }
        }
        g
    }

    /// The induced vertex weights: `ω_i = Σ_j c_ij`, exactly.
    pub fn weights(&self) -> Weights {
        let omega = (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .filter(|&j| j != i)
                    .map(|j| self.weight(i, j).clone())
                    .sum()
            })
            .collect();
        Weights { omega }
    }

    /// Exact inner product `Σ c_ij d_ij`.
    pub fn dot(&self, d: &Metric) -> Rational {
        self.c.iter().zip(d.distances()).map(|(c, d)| c * d).sum()
    }

    /// True iff every weight is 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|w| w.is_zero() || w.is_one())
    }
}

/// The induced vertex weights of a matching. Equivalent to
/// [`FractionalMatching::weights`].
pub fn matching_weights(c: &FractionalMatching) -> Weights {
    c.weights()
}

/// Outcome of the matching LP.
#[derive(Debug, Clone)]
pub struct MatchingLpResult {
    pub matching: FractionalMatching,
    /// `Σ c_ij d_ij`, exact.
    pub objective: Rational,
    /// Whether the LP optimum is unique (it always is for generic metrics).
    pub unique: bool,
}

fn matching_lp(d: &Metric, w: &Weights) -> LinearProgram {
    let n = d.n();
    let mut lp = LinearProgram::new(pair_count(n), d.distances().to_vec());
    for i in 1..=n {
        let mut row = vec![int(0); pair_count(n)];
        for j in 1..=n {
            if j != i {
                row[pair_index(n, i.min(j) - 1, i.max(j) - 1)] = int(1);
            }
        }
        lp.add_equality(row, w.get(i).clone());
    }
    lp
}

/// Maximizes `c·d` over all fractional ω-matchings. The result is a vertex
/// of the matching polytope; `unique` reports whether it is the only
/// optimum.
pub fn optimal_matching(d: &Metric, w: &Weights) -> Result<MatchingLpResult, Error> {
    assert_eq!(d.n(), w.n(), "metric and weights disagree on the point count");
    let lp = matching_lp(d, w);
    let sol = exactlp::solve(&lp);
    match sol.status {
        LpStatus::Infeasible => Err(Error::InfeasibleWeights),
        // the matching polytope is bounded: c_ij <= min(ω_i, ω_j)
        LpStatus::Unbounded => unreachable!("matching polytope is bounded"),
        LpStatus::Optimal => Ok(MatchingLpResult {
            matching: FractionalMatching::from_point(d.n(), &sol.point.unwrap()),
            objective: sol.objective_value.unwrap(),
            unique: sol.unique_optimum,
        }),
    }
}

/// Builds a non-genericity certificate from a weight vector with more than
/// one LP-optimal matching: the union of two optimal supports contains a
/// nontrivial even tour whenever the supports differ.
fn non_unique_certificate(d: &Metric, w: &Weights, support: &Subgraph) -> NonGenericCertificate {
    let lp = matching_lp(d, w);
    let union = match exactlp::alternate_optimum(&lp) {
        Some(alt) => {
            let other = FractionalMatching::from_point(d.n(), &alt).support();
            support.union(&other)
        }
        None => *support,
    };
    match union.find_even_tour() {
        Some(walk) => NonGenericCertificate::EvenTour { graph: union, walk },
        None => NonGenericCertificate::NonUniqueOptimum {
            omega: w.as_slice().to_vec(),
            support_union: union,
        },
    }
}

/// The support of the LP-optimal ω-matching: the cell of the subdivision
/// whose relative interior contains `ω/|ω|`. A non-unique optimum is
/// reported as a non-genericity certificate rather than silently merged.
pub fn point_cell(d: &Metric, w: &Weights) -> Result<Subgraph, Error> {
    let result = optimal_matching(d, w)?;
    if !result.unique {
        let support = result.matching.support();
        return Err(Error::non_generic(non_unique_certificate(d, w, &support)));
    }
    Ok(result.matching.support())
}

pub(crate) fn one_matching(d: &Metric) -> Result<MatchingLpResult, Error> {
    let result = optimal_matching(d, &Weights::ones(d.n()))?;
    if !result.unique {
        let support = result.matching.support();
        return Err(Error::non_generic(non_unique_certificate(
            d,
            &Weights::ones(d.n()),
            &support,
        )));
    }
    Ok(result)
}

/// For even `n`: is the LP-optimal fractional 1-matching integral, i.e. a
/// perfect matching on `n/2` edges? Equivalent to the tight span attaining
/// the maximal dimension `n/2`.
pub fn one_matching_integral(d: &Metric) -> Result<bool, Error> {
    if d.n() % 2 != 0 {
        return Err(Error::OddPointCount { n: d.n() });
    }
    let result = one_matching(d)?;
    Ok(result.matching.is_integral())
}

/// Component classification of the LP-optimal 1-matching's support. For a
/// generic metric every component is a pure odd cycle or a single edge;
/// anything else is reported as a non-genericity certificate.
pub fn one_matching_structure(d: &Metric) -> Result<Vec<ComponentKind>, Error> {
    let result = one_matching(d)?;
    let support = result.matching.support();
    let kinds = support.classify_components();
    for kind in &kinds {
        if !kind.is_single_edge() && !kind.is_pure_odd_cycle() {
            let cert = match support.find_even_tour() {
                Some(walk) => NonGenericCertificate::EvenTour { graph: support, walk },
                None => NonGenericCertificate::NonSimplexCell { graph: support },
            };
            return Err(Error::non_generic(cert));
        }
    }
    Ok(kinds)
}

/// The interior cell witnessing the lower dimension bound: all isolated
/// edges of the 1-matching support plus, from each k-cycle `v_1 ... v_k`,
/// the `ceil(k/2)` covering edges `v_1v_2, v_3v_4, ..., v_kv_1`.
///
/// The result has at most `floor(2n/3)` edges, is spanning, is not a star,
/// and is a cell, so its codimension `n - |E|` is at least `ceil(n/3)`.
/// Requires `n >= 4`: on three points every 2-edge spanning subgraph is a
/// star, so no such interior cell exists.
pub fn lower_bound_witness(d: &Metric) -> Result<Subgraph, Error> {
    let n = d.n();
    if n < 4 {
        return Err(Error::UnsupportedPointCount { op: "lower_bound_witness", n, min: 4 });
    }
    one_matching_structure(d)?; // surfaces non-genericity
    let support = one_matching(d)?.matching.support();
    let mut witness = Subgraph::empty(n);
    for comp in support.components() {
        if comp.len() == 2 {
            witness = witness.with_edge(comp[0], comp[1]);
        } else {
            let cycle = support.unique_cycle(&comp);
            let k = cycle.len();
            let mut idx = 0;
            while idx + 1 < k {
                witness = witness.with_edge(cycle[idx], cycle[idx + 1]);
                idx += 2;
            }
            witness = witness.with_edge(cycle[k - 1], cycle[0]);
        }
    }
    Ok(witness)
}

/// Whether the indicator matching of `G` (weight 1 per edge, `ω = deg G`)
/// is LP-optimal for its own weights — equivalently, whether `G` is a cell
/// of the subdivision.
pub fn support_is_lp_optimal(d: &Metric, g: &Subgraph) -> bool {
    assert_eq!(d.n(), g.n());
    let indicator = FractionalMatching::indicator(g);
    let w = indicator.weights();
    let result = optimal_matching(d, &w).expect("indicator matching is feasible");
    result.objective == indicator.dot(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::collections::BTreeMap;

    pub(crate) fn metric(n: usize, entries: &[((usize, usize), Rational)]) -> Metric {
        let map: BTreeMap<(usize, usize), Rational> = entries.iter().cloned().collect();
        Metric::new(n, &map).unwrap()
    }

    /// d13 = d24 = 2, the remaining distances slightly above 1 and all
    /// distinct.
    pub(crate) fn matchex4() -> Metric {
        metric(
            4,
            &[
                ((1, 2), rat(17, 16)),
                ((1, 3), int(2)),
                ((1, 4), rat(33, 32)),
                ((2, 3), rat(65, 64)),
                ((2, 4), int(2)),
                ((3, 4), rat(129, 128)),
            ],
        )
    }

    fn equilateral3() -> Metric {
        metric(3, &[((1, 2), int(1)), ((1, 3), int(1)), ((2, 3), int(1))])
    }

    #[test]
    fn weights_of_k3_halves() {
        let c = FractionalMatching::new(
            3,
            &[((1, 2), rat(1, 2)), ((1, 3), rat(1, 2)), ((2, 3), rat(1, 2))],
        )
        .unwrap();
        assert_eq!(c.weights().as_slice(), &[int(1), int(1), int(1)]);
        assert_eq!(c.weights().half_norm(), rat(3, 2));
    }

    #[test]
    fn weights_of_trivial_matchings() {
        assert_eq!(
            FractionalMatching::zero(3).weights().as_slice(),
            &[int(0), int(0), int(0)]
        );
        let single = FractionalMatching::new(4, &[((1, 2), int(1))]).unwrap();
        assert_eq!(single.weights().as_slice(), &[int(1), int(1), int(0), int(0)]);
    }

    #[test]
    fn k3_matching_is_forced() {
        let result = optimal_matching(&equilateral3(), &Weights::ones(3)).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(result.matching.weight(i, j), &rat(1, 2));
        }
        assert!(result.unique);
        assert_eq!(result.objective, rat(3, 2));
    }

    #[test]
    fn matchex4_one_matching_is_the_long_matching() {
        let d = matchex4();
        let result = optimal_matching(&d, &Weights::ones(4)).unwrap();
        assert_eq!(result.matching.weight(1, 3), &int(1));
        assert_eq!(result.matching.weight(2, 4), &int(1));
        assert_eq!(result.objective, int(4));
        assert!(result.unique);
        assert_eq!(
            point_cell(&d, &Weights::ones(4)).unwrap(),
            Subgraph::from_edges(4, &[(1, 3), (2, 4)]).unwrap()
        );
    }

    #[test]
    fn infeasible_weights_are_reported() {
        let w = Weights::new(vec![int(3), int(1), int(1)]).unwrap();
        assert_eq!(
            optimal_matching(&equilateral3(), &w).unwrap_err(),
            Error::InfeasibleWeights
        );
    }

    #[test]
    fn negative_weights_are_rejected() {
        assert_eq!(
            Weights::new(vec![int(1), rat(-1, 2)]).unwrap_err(),
            Error::NegativeWeight { index: 2 }
        );
    }

    #[test]
    fn one_matching_integrality() {
        assert!(one_matching_integral(&matchex4()).unwrap());
        assert_eq!(
            one_matching_integral(&equilateral3()).unwrap_err(),
            Error::OddPointCount { n: 3 }
        );
        // two points, single edge
        let two = metric(2, &[((1, 2), int(1))]);
        assert!(one_matching_integral(&two).unwrap());
    }

    #[test]
    fn structure_of_matchex4_is_two_edges() {
        let kinds = one_matching_structure(&matchex4()).unwrap();
        assert_eq!(kinds.len(), 2);
        assert!(kinds.iter().all(ComponentKind::is_single_edge));
    }

    #[test]
    fn structure_on_k3_is_one_triangle() {
        // strict-triangle metric with distinct distances to keep the LP
        // optimum unique
        let d = metric(
            3,
            &[((1, 2), rat(9, 8)), ((1, 3), rat(17, 16)), ((2, 3), rat(33, 32))],
        );
        let kinds = one_matching_structure(&d).unwrap();
        assert_eq!(kinds, vec![ComponentKind::UnicyclicOdd { vertices: 3, cycle_len: 3 }]);
    }

    #[test]
    fn witness_for_matchex4_is_the_matching_itself() {
        let w = lower_bound_witness(&matchex4()).unwrap();
        assert_eq!(w, Subgraph::from_edges(4, &[(1, 3), (2, 4)]).unwrap());
    }

    #[test]
    fn witness_requires_four_points() {
        assert!(matches!(
            lower_bound_witness(&equilateral3()),
            Err(Error::UnsupportedPointCount { min: 4, .. })
        ));
    }

    #[test]
    fn support_optimality_examples() {
        let d = matchex4();
        let long = Subgraph::from_edges(4, &[(1, 3), (2, 4)]).unwrap();
        let short = Subgraph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(support_is_lp_optimal(&d, &long));
        assert!(!support_is_lp_optimal(&d, &short));
        // a single edge is always a cell
        let single = Subgraph::from_edges(4, &[(1, 4)]).unwrap();
        assert!(support_is_lp_optimal(&d, &single));
    }

    #[test]
    fn all_ones_metric_yields_even_tour_certificate() {
        let d = metric(
            4,
            &[
                ((1, 2), int(1)),
                ((1, 3), int(1)),
                ((1, 4), int(1)),
                ((2, 3), int(1)),
                ((2, 4), int(1)),
                ((3, 4), int(1)),
            ],
        );
        let err = point_cell(&d, &Weights::ones(4)).unwrap_err();
        match err.certificate().expect("non-generic") {
            NonGenericCertificate::EvenTour { walk, .. } => {
                assert_eq!((walk.len() - 1) % 2, 0);
            }
            other => panic!("expected an even-tour certificate, got {other}"),
        }
    }
}
