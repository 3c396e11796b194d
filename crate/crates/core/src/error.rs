use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u32),

    #[error("variable layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("polynomial is not homogeneous of degree {expected}")]
    Inhomogeneous { expected: u32 },

    #[error("expected a {expected} system, got {actual}")]
    FlavorMismatch { expected: String, actual: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal is not zero-dimensional (infinite staircase)")]
    PositiveDimensional,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
