use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("value must be nonzero")]
    ZeroValue,

    #[error("vertex count {n} exceeds the exhaustive-search bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("arc probability {numerator}/{denominator} must lie strictly between 0 and 1")]
    InvalidProbability { numerator: u32, denominator: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
