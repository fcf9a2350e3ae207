use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate tuple: kernel dimension exceeds 6")]
    DegenerateTuple,
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("condition failed: {0}")]
    ConditionFailed(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
