use thiserror::Error;

/// Errors surfaced by model fitting, selection, and evaluation.
#[derive(Debug, Error)]
pub enum RegressError {
    /// Caller handed over inconsistent shapes, non-finite values, or an
    /// otherwise unusable request.
    #[error("invalid input: {0}")]
    Input(String),

    /// The normal-equation system has no unique solution.  Only reachable
    /// at zero regularization; any positive penalty makes the system
    /// positive definite.
    #[error("singular system: {0}; refit with a regularization strength > 0")]
    Singular(String),

    /// The iterative optimizer stopped without meeting its convergence
    /// certificate.
    #[error("optimizer did not converge: {0} (residual {residual:e})", residual = .residual)]
    NonConvergence { message: String, residual: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
