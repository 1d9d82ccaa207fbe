use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("not divisible by x{0} - x{1}")]
    NotDivisible(usize, usize),
    #[error("odd degree {0}")]
    OddDegree(i64),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid parabolic pair: {0}")]
    NotNested(String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
