use thiserror::Error;

/// Errors raised by the jet-geometry computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("subspace does not live in L (ambient {found}, dim L = {expected})")]
    NotSubspaceOfL { expected: usize, found: usize },

    #[error("subspace is not a horizontal isotropic (integral) element")]
    NotIntegralElement,

    #[error("subspace is not horizontal")]
    NotHorizontal,

    /// The linear system for a fiber representative is inconsistent. For a
    /// horizontal isotropic subspace this contradicts the affine-bundle
    /// structure of the isotropic Grassmannian, so it is a falsification.
    #[error("NO_SOLUTION: no polynomial lifts the subspace (falsification event)")]
    NoSolution,

    #[error("homomorphism is not tangent to the isotropic Grassmannian: pair ({0}, {1}) violates symmetry")]
    NotTangent(usize, usize),

    #[error("order k = {0} is not supported here (need k >= {1})")]
    UnsupportedOrder(usize, usize),

    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("coordinate change is not invertible")]
    NonInvertible,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("UNDECIDED: {0}")]
    Undecided(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
