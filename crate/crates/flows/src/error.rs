use thiserror::Error;

/// Errors produced while building, transforming or serializing flow data.
#[derive(Debug, Error)]
pub enum FlowsError {
    #[error("flow matrix error: {0}")]
    Matrix(String),

    #[error("normalization error: {0}")]
    Normalize(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
