use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a p-group for p = {0}")]
    NotPGroup(u32),

    #[error("{0}")]
    NotContained(String),

    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
