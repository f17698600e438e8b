//! Finite metrics with exact rational distances.
//!
//! A [`Metric`] is a point count `n >= 2` together with a positive rational
//! distance for each unordered pair of `1..=n`, satisfying the triangle
//! inequality non-strictly. Degenerate (non-strict) metrics are valid
//! inputs; they are simply liable to be non-generic downstream.

use std::collections::BTreeMap;

use crate::graph::{pair_count, pair_index, MAX_POINTS};
use crate::rational::Rational;
use num_traits::Signed;

/// Validation failure for a metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricError {
    /// `n < 2` or `n > MAX_POINTS`.
    PointCount { n: usize },
    /// A pair key uses a point outside `1..=n`, repeats a point, or occurs
    /// twice.
    BadPair { i: usize, j: usize },
    /// Some pair has no distance entry.
    MissingEntry { i: usize, j: usize },
    /// A distance is zero or negative.
    NonPositiveDistance { i: usize, j: usize },
    /// `d(i,k) > d(i,j) + d(j,k)` for the sorted triple `(i, j, k)` with
    /// apex `via`.
    TriangleViolation { i: usize, j: usize, k: usize, via: usize },
}

impl std::fmt::Display for MetricError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricError::PointCount { n } => {
                write!(f, "point count {n} out of range (2..={MAX_POINTS})")
            }
            MetricError::BadPair { i, j } => write!(f, "bad pair ({i}, {j})"),
            MetricError::MissingEntry { i, j } => write!(f, "missing distance for pair {i},{j}"),
            MetricError::NonPositiveDistance { i, j } => {
                write!(f, "distance for pair {i},{j} is not positive")
            }
            MetricError::TriangleViolation { i, j, k, via } => {
                let (a, b) = {
                    let mut rest = [*i, *j, *k].into_iter().filter(|v| v != via);
                    (rest.next().unwrap(), rest.next().unwrap())
                };
                write!(
                    f,
                    "triangle inequality fails on {{{i},{j},{k}}}: d({a},{b}) > d({a},{via}) + d({via},{b})"
                )
            }
        }
    }
}

impl std::error::Error for MetricError {}

/// A validated finite metric on points `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    // distances in lexicographic pair order
    d: Vec<Rational>,
}

impl Metric {
    /// Validates a full distance map. All `C(n,2)` pairs must be present,
    /// positive, and satisfy the triangle inequality (non-strictly); the
    /// first failing triple is reported.
    pub fn new(n: usize, raw: &BTreeMap<(usize, usize), Rational>) -> Result<Self, MetricError> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(MetricError::PointCount { n });
        }
        let mut d: Vec<Option<Rational>> = vec![None; pair_count(n)];
        for (&(i, j), value) in raw {
            if i == j || i < 1 || j < 1 || i > n || j > n {
                return Err(MetricError::BadPair { i, j });
            }
            let idx = pair_index(n, i.min(j) - 1, i.max(j) - 1);
            if d[idx].replace(value.clone()).is_some() {
                return Err(MetricError::BadPair { i, j });
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if d[pair_index(n, i - 1, j - 1)].is_none() {
                    return Err(MetricError::MissingEntry { i, j });
                }
            }
        }
        let d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();
        Metric::from_distances(n, d)
    }

    /// Builds a metric from distances listed in lexicographic pair order
    /// `(1,2), (1,3), ..., (1,n), (2,3), ...`.
    pub fn from_distances(n: usize, d: Vec<Rational>) -> Result<Self, MetricError> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(MetricError::PointCount { n });
        }
        assert_eq!(d.len(), pair_count(n), "expected C(n,2) distances");
        let m = Metric { n, d };
        for i in 1..=n {
            for j in i + 1..=n {
                if !m.distance(i, j).is_positive() {
                    return Err(MetricError::NonPositiveDistance { i, j });
                }
            }
        }
        // d(a,b) <= d(a,via) + d(via,b) for every apex and pair
        for via in 1..=n {
            for a in 1..=n {
                if a == via {
                    continue;
                }
                for b in a + 1..=n {
                    if b == via {
                        continue;
                    }
                    let lhs = m.distance(a, b);
                    let rhs = m.distance(a, via) + m.distance(via, b);
                    if *lhs > rhs {
                        let mut t = [a, b, via];
                        t.sort_unstable();
                        return Err(MetricError::TriangleViolation {
                            i: t[0],
                            j: t[1],
                            k: t[2],
                            via,
                        });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between distinct points `i` and `j` (1-based).
    pub fn distance(&self, i: usize, j: usize) -> &Rational {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        &self.d[pair_index(self.n, i.min(j) - 1, i.max(j) - 1)]
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
    }

    /// Distances in lexicographic pair order.
    pub fn distances(&self) -> &[Rational] {
        &self.d
    }
}

impl std::fmt::Debug for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Metric(n={}", self.n)?;
        for (i, j) in self.pairs() {
            write!(f, ", d{i}{j}={}", self.distance(i, j))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn metric_from(n: usize, entries: &[((usize, usize), Rational)]) -> Result<Metric, MetricError> {
        let map: BTreeMap<(usize, usize), Rational> = entries.iter().cloned().collect();
        Metric::new(n, &map)
    }

    #[test]
    fn equilateral_is_valid() {
        let m = metric_from(
            3,
            &[((1, 2), int(1)), ((1, 3), int(1)), ((2, 3), int(1))],
        )
        .unwrap();
        assert_eq!(m.distance(2, 1), &int(1));
    }

    #[test]
    fn triangle_violation_reports_triple() {
        let err = metric_from(
            3,
            &[((1, 2), int(1)), ((1, 3), int(1)), ((2, 3), int(3))],
        )
        .unwrap_err();
        match err {
            MetricError::TriangleViolation { i, j, k, via } => {
                assert_eq!((i, j, k), (1, 2, 3));
                assert_eq!(via, 1);
            }
            other => panic!("expected triangle violation, got {other:?}"),
        }
    }

    #[test]
    fn missing_and_nonpositive_entries() {
        assert_eq!(
            metric_from(3, &[((1, 2), int(1)), ((1, 3), int(1))]),
            Err(MetricError::MissingEntry { i: 2, j: 3 })
        );
        assert_eq!(
            metric_from(
                3,
                &[((1, 2), int(0)), ((1, 3), int(1)), ((2, 3), int(1))]
            ),
            Err(MetricError::NonPositiveDistance { i: 1, j: 2 })
        );
    }

    #[test]
    fn non_strict_triangle_is_accepted() {
        // d(1,3) = d(1,2) + d(2,3) exactly
        let m = metric_from(
            3,
            &[((1, 2), int(1)), ((2, 3), int(1)), ((1, 3), int(2))],
        );
        assert!(m.is_ok());
    }

    #[test]
    fn matchex_style_distances_are_valid() {
        // d13 = d24 = 2, the rest slightly above 1
        let m = metric_from(
            4,
            &[
                ((1, 2), rat(17, 16)),
                ((1, 3), int(2)),
                ((1, 4), rat(33, 32)),
                ((2, 3), rat(65, 64)),
                ((2, 4), int(2)),
                ((3, 4), rat(129, 128)),
            ],
        );
        assert!(m.is_ok());
    }

    #[test]
    fn reversed_pair_keys_are_accepted() {
        let m = metric_from(
            3,
            &[((2, 1), int(1)), ((3, 1), int(1)), ((3, 2), int(1))],
        );
        assert!(m.is_ok());
        // but the same pair twice is not
        let err = metric_from(
            3,
            &[((1, 2), int(1)), ((2, 1), int(1)), ((3, 1), int(1)), ((3, 2), int(1))],
        );
        assert_eq!(err, Err(MetricError::BadPair { i: 2, j: 1 }));
    }
}
