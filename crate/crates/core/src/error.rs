//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction and analysis operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point cloud must contain at least one point of dimension at least one")]
    EmptyCloud,

    #[error("points {i} and {j} have identical coordinates")]
    DuplicatePoints { i: usize, j: usize },

    #[error("vertex index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    /// The sub-configuration of a simplex is affinely dependent, so its
    /// circumsphere (and hence circumradius gradient) is undefined.
    #[error("degenerate simplex {vertices:?}: sub-configuration is affinely dependent")]
    DegenerateSimplex { vertices: Vec<usize> },

    /// Building the filtered complex would exceed the simplex budget.
    #[error("complex with {simplices} simplices exceeds budget of {budget}")]
    ComplexTooLarge { simplices: usize, budget: usize },

    /// The input lies outside the regime the rank tests are defined for
    /// (fewer than d+1 points, or a configuration that does not affinely
    /// span R^d).
    #[error("domain error: {0}")]
    Domain(String),

    /// A theorem hypothesis is not met; the verdict is neither true nor
    /// false but unavailable.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// The count inequality C(n, d+1) >= dn - C(d+1, 2) fails.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// Chain construction broke the pairwise direction-angle condition.
    #[error("angle violation: {0}")]
    AngleViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
