//! Crate-wide error type and non-genericity certificates.

use crate::graph::{format_walk, Subgraph};
use crate::rational::{format_rational, Rational};

/// Errors surfaced by the matching, subdivision, polar, and generator
/// operations. Metric and graph construction have their own error types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// No fractional matching has the requested vertex weights.
    InfeasibleWeights,
    /// A weight vector entry is negative.
    NegativeWeight { index: usize },
    /// The operation needs an even number of points.
    OddPointCount { n: usize },
    /// The metric was detected to be non-generic; the certificate says how.
    NonGeneric(Box<NonGenericCertificate>),
    /// Brute-force enumeration refused to run above its point-count cap.
    ScaleLimit { op: &'static str, n: usize, limit: usize },
    /// The operation does not support this point count.
    UnsupportedPointCount { op: &'static str, n: usize, min: usize },
    /// Requested tight-span dimension outside `[ceil(n/3), floor(n/2)]`.
    DimensionOutOfRange { n: usize, target: usize, lo: usize, hi: usize },
    /// A generator exhausted its retry budget without producing a verified
    /// instance.
    ConstructionFailed { kind: &'static str, attempts: u32 },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::InfeasibleWeights => write!(f, "no fractional matching has these weights"),
            Error::NegativeWeight { index } => {
                write!(f, "weight for point {index} is negative")
            }
            Error::OddPointCount { n } => {
                write!(f, "operation requires an even point count, got n = {n}")
            }
            Error::NonGeneric(cert) => write!(f, "metric is not generic: {cert}"),
            Error::ScaleLimit { op, n, limit } => {
                write!(f, "{op} is capped at n <= {limit}, got n = {n}")
            }
            Error::UnsupportedPointCount { op, n, min } => {
                write!(f, "{op} requires n >= {min}, got n = {n}")
            }
            Error::DimensionOutOfRange { n, target, lo, hi } => {
                write!(f, "dimension {target} unreachable for n = {n}: range is [{lo}, {hi}]")
            }
            Error::ConstructionFailed { kind, attempts } => {
                write!(f, "{kind} construction failed verification after {attempts} attempts")
            }
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    pub(crate) fn non_generic(cert: NonGenericCertificate) -> Self {
        Error::NonGeneric(Box::new(cert))
    }

    /// The certificate, if this is a non-genericity error.
    pub fn certificate(&self) -> Option<&NonGenericCertificate> {
        match self {
            Error::NonGeneric(cert) => Some(cert),
            _ => None,
        }
    }
}

/// Concrete evidence that a metric is not generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonGenericCertificate {
    /// A cell's graph admits a nontrivial even tour; the closed walk is
    /// listed as a vertex sequence.
    EvenTour { graph: Subgraph, walk: Vec<usize> },
    /// A cell whose lifted vertices are affinely dependent, so it is not a
    /// simplex.
    NonSimplexCell { graph: Subgraph },
    /// Two distinct LP-optimal fractional matchings exist for this weight
    /// vector; their supports are merged in `support_union`.
    NonUniqueOptimum { omega: Vec<Rational>, support_union: Subgraph },
    /// Point location never stabilized on an `n`-edge cell with a unique
    /// optimum within the retry budget.
    PointLocationFailed { attempts: u32 },
    /// An interior ridge matched an unexpected number of full-dimensional
    /// cells.
    AmbiguousRidge { ridge: Subgraph, cells: Vec<Subgraph> },
}

impl std::fmt::Display for NonGenericCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonGenericCertificate::EvenTour { graph, walk } => {
                write!(f, "even tour {} in cell [{}]", format_walk(walk), graph)
            }
            NonGenericCertificate::NonSimplexCell { graph } => {
                write!(f, "non-simplex cell [{graph}]")
            }
            NonGenericCertificate::NonUniqueOptimum { omega, support_union } => {
                let w: Vec<String> = omega.iter().map(format_rational).collect();
                write!(
                    f,
                    "multiple LP-optimal matchings for omega = ({}); union of supports [{}]",
                    w.join(", "),
                    support_union
                )
            }
            NonGenericCertificate::PointLocationFailed { attempts } => {
                write!(f, "point location failed to stabilize after {attempts} attempts")
            }
            NonGenericCertificate::AmbiguousRidge { ridge, cells } => {
                write!(f, "ridge [{ridge}] lies in {} full-dimensional cells", cells.len())
            }
        }
    }
}
