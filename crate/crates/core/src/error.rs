use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular specialization")]
    SingularSpecialization,
    #[error("not expandable")]
    NotExpandable,
    #[error("invalid dimension vector: {0}")]
    InvalidDimensionVector(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation overflow: degree {degree} exceeds truncation {trunc}")]
    TruncationOverflow { degree: usize, trunc: usize },
    #[error("mixed bases or incompatible symmetric functions: {0}")]
    Incompatible(String),
    #[error("nonzero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("parity violation: odd power of s survives in {0}")]
    ParityViolation(String),
    #[error("non-integer coefficient in {0}")]
    NonIntegerCoefficient(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
