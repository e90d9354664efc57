use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    /// Paper at this 0-based input position has no authors after deduplication.
    #[error("paper at input position {index} has no authors")]
    EmptyPaper { index: usize },

    #[error("length mismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("simplex iteration limit of {limit} exceeded")]
    IterationLimitExceeded { limit: usize },

    #[error("LP is unbounded along variable {var}")]
    Unbounded { var: usize },

    #[error("fractional input violates the limit for author row {row}: load {load} > {limit}")]
    InfeasibleInput { row: usize, load: f64, limit: f64 },

    #[error("value {value} of variable {var} is outside [0, 1]")]
    OutOfBounds { var: usize, value: f64 },

    #[error(transparent)]
    Model(#[from] ModelError),
}
