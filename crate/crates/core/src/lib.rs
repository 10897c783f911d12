//! Combinatorial kernel for bicircular, frame, and quasi-graphic matroids.
//!
//! The crate is organised around a small number of value types: labeled
//! [`multigraph::MultiGraph`]s, matroids given by their circuit families
//! ([`matroid::CircuitMatroid`]), biased graphs ([`biased::BiasedGraph`]),
//! and bicircular representations with balanced loops
//! ([`bicircular::LoopBiasedGraph`]). On top of these sit the decision
//! procedures in [`decide`] (is a matroid bicircular, is it an excluded
//! minor for the class) and the named instances in [`catalog`].
//!
//! All algorithms here are exhaustive desk-scale searches: correctness and
//! reproducibility over speed. Iteration order is everywhere the
//! lexicographic order of labels, so every report is deterministic.

pub mod biased;
pub mod bicircular;
pub mod catalog;
pub mod decide;
pub mod enumerate;
pub mod matroid;
pub mod multigraph;

use serde::{Deserialize, Serialize};

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A precondition on the input data does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The operation is not defined for this input (e.g. contracting a loop
    /// at the plain-graph level).
    #[error("invalid operation: {0}")]
    InvalidOperation(String),
    /// An enumeration cap was exceeded; the caller may retry with larger
    /// limits.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// A named entity does not exist.
    #[error("not found: {0}")]
    NotFound(String),
    /// A text or structured document failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
    pub(crate) fn op(msg: impl Into<String>) -> Self {
        Error::InvalidOperation(msg.into())
    }
    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}

/// Enumeration caps for the exhaustive procedures.
///
/// Defaults are conservative; exceeding a cap never silently degrades an
/// answer — the operation returns [`Error::ResourceLimit`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Ground-set cap for the bicircularity search and minor containment.
    pub max_elements: usize,
    /// Vertex cap for canonical forms and representation closures.
    pub max_vertices: usize,
    /// Cap on the number of distinct graphs a representation closure may
    /// collect before giving up.
    pub max_closure: usize,
    /// Ground-set size up to which circuit-axiom validation is exhaustive.
    pub axiom_check: usize,
    /// Ground-set cap for separation enumeration.
    pub max_separation: usize,
    /// Number of worker threads for the bicircularity search.
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 12,
            max_vertices: 10,
            max_closure: 10_000,
            axiom_check: 14,
            max_separation: 16,
            workers: 1,
        }
    }
}

impl Limits {
    /// Default limits with the element cap replaced.
    pub fn with_max_elements(n: usize) -> Self {
        Limits { max_elements: n, ..Limits::default() }
    }
}
