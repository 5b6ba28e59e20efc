use thiserror::Error;

/// Errors raised by the library. Mathematically negative answers (a missing
/// square root, an open case) are values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("not a member of the carrier: {0}")]
    NotMember(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("element is not Boolean: {0}")]
    NotBoolean(String),
    #[error("ideal is not normal: {0}")]
    NotNormal(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("degenerate algebra: {0}")]
    Degenerate(String),
    #[error("no square-root mapping: {0}")]
    NoSqrtMap(String),
    #[error("square root of zero does not exist: {0}")]
    NoSqrtZero(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
