//! Exact-arithmetic tools for tight spans of finite metrics.
//!
//! Given a finite metric with rational distances, this crate computes the
//! combinatorial dimension of its tight span by enumerating the regular
//! subdivision of the second hypersimplex `Δ(n,2)` that the metric
//! induces, diagnoses genericity with concrete certificates, cross-checks
//! the answer against the bounded faces of the polyhedron
//! `P_d = { x >= 0 : x_i + x_j >= d_ij }`, and generates the extremal
//! metric families that pin the dimension to any value between
//! `ceil(n/3)` and `floor(n/2)`.
//!
//! Everything is exact: all arithmetic is arbitrary-precision rational,
//! and all optimization goes through an exact simplex solver.
//!
//! The narrative guide lives in the `book/` directory of the repository;
//! its code snippets compile and run as doctests of this crate.

pub mod error;
pub mod exactlp;
pub mod generators;
pub mod graph;
mod linalg;
pub mod matching;
pub mod metric;
pub mod oracle;
pub mod polar;
pub mod rational;
pub mod subdivision;

pub use error::{Error, NonGenericCertificate};
pub use graph::{ComponentKind, CycleDefect, GraphError, Subgraph};
pub use matching::{FractionalMatching, MatchingLpResult, Weights};
pub use metric::{Metric, MetricError};
pub use rational::Rational;
pub use subdivision::{Cell, Genericity, Subdivision, TightSpanReport};

#[cfg(doctest)]
mod book {
    //! Runs every fenced Rust block in the guide as a doctest, keeping the
    //! book in sync with the code.
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/subdivision.md")]
    mod subdivision {}
    #[doc = include_str!("../../../book/src/matchings.md")]
    mod matchings {}
    #[doc = include_str!("../../../book/src/dimension.md")]
    mod dimension {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/polar.md")]
    mod polar {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
