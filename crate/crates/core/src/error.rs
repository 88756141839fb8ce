use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error(
        "unsupported field d = {0}: expected Q (d = 0) or Q(sqrt(-d)) with d in {{1, 2, 3, 7, 11, 19, 43, 67, 163}}"
    )]
    UnsupportedField(i64),
    #[error("{0} must be nonzero")]
    Zero(&'static str),
    #[error("{0} is not an algebraic integer")]
    NotIntegral(String),
    #[error("level overflow: {0}")]
    LevelOverflow(String),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("element is not in the theta subalgebra: {0}")]
    NotTheta(String),
    #[error("beta must be greater than 1 (got {0})")]
    BetaTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, HeckeError>;
