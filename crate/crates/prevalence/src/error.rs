use thiserror::Error;

#[derive(Debug, Error)]
pub enum PrevalenceError {
    #[error("invalid kernel config: {0}")]
    BadConfig(String),
    #[error("no survey clusters supplied")]
    NoClusters,
    #[error("invalid cluster data: {0}")]
    BadCluster(String),
    #[error("estimation failed: {0}")]
    Estimate(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
