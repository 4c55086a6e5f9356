use thiserror::Error;

#[derive(Debug, Error)]
pub enum FeaturesError {
    #[error("invalid feature matrix: {0}")]
    Matrix(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
