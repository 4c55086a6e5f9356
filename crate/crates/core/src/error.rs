use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{count} malformed lines exceed tolerance {tolerance}; first offender at line {line}: {message}")]
    TooManyParseErrors {
        count: usize,
        tolerance: usize,
        line: usize,
        message: String,
    },

    #[error("hierarchy: {0}")]
    Hierarchy(String),

    #[error("population table: {0}")]
    Population(String),

    #[error("survey clusters: {0}")]
    Survey(String),

    #[error("time window: {0}")]
    Window(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
