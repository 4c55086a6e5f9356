use thiserror::Error;

/// Errors raised while probing fitted models.
#[derive(Debug, Error)]
pub enum ExplainError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Model(#[from] mobiprev_regress::RegressError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
