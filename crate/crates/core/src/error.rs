use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("index ({0}, {1}) outside the matrix")]
    OutOfRange(usize, usize),
    #[error("nonzero entry at ({0}, {1}) violates the band constraint |i-j| <= {2}")]
    OutOfBand(usize, usize, usize),
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("value outside the {0} carrier: {1}")]
    CarrierViolation(&'static str, String),
    #[error("empty subset")]
    EmptySubset,
    #[error("position ({0}, {1}) is not in the support")]
    NotInSupport(usize, usize),
    #[error("cover instance has an element contained in no set")]
    Uncoverable,
    #[error("instance too large for the exhaustive path: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matrix is not tridiagonal: nonzero entry at ({0}, {1})")]
    NotTridiagonal(usize, usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
