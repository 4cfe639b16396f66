use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("order bound exceeded: {0}")]
    OrderBoundExceeded(String),
    #[error("operands live in different ambient groups")]
    AmbientMismatch,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a quotient: {0}")]
    NotAQuotient(String),
    #[error("invalid Goursat quintuple: {0}")]
    InvalidQuintuple(String),
    #[error("unsupported sub-quotient target {0:?}")]
    UnsupportedTarget(Vec<u64>),
    #[error("wrong quotient type: expected {expected:?}, found {found:?}")]
    WrongQuotientType { expected: Vec<u64>, found: Vec<u64> },
    #[error("not a rational character: {0}")]
    NotACharacter(String),
    #[error("not a relative Brauer relation: {0}")]
    NotARelation(String),
    #[error("no certificate over indufted generators: {0}")]
    NoCertificate(String),
    #[error("verification failed: {}", .0.join("; "))]
    VerificationFailure(Vec<String>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, Error>;
