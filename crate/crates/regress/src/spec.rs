use serde::{Deserialize, Serialize};

use crate::error::RegressError;

/// Regression family used for fitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Linear least squares with an L2 coefficient penalty.
    Ridge,
    /// Linear support-vector regression with an epsilon-insensitive loss.
    Svr,
}

/// Default number of grid points for hyperparameter search.
pub const DEFAULT_GRID_POINTS: usize = 9;

/// Default epsilon (half-width of the zero-loss band) for SVR.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Everything needed to reproduce a fit: method, hyperparameter grid, SVR
/// epsilon, and the optional feature-elimination target.
///
/// `nested` selects the evaluation protocol.  When true (the default),
/// hyperparameter search and feature elimination are re-run inside every
/// leave-one-out training fold, and elimination rounds re-search the grid.
/// When false, both are run once on the full data and folds only refit
/// coefficients — a deliberately leaky variant kept for comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub method: Method,
    /// Candidate regularization strengths (ridge) or error costs (SVR).
    pub grid: Vec<f64>,
    /// Zero-loss band half-width; ignored by ridge.
    pub epsilon: f64,
    /// If set, recursive feature elimination keeps exactly this many columns.
    pub target_features: Option<usize>,
    pub nested: bool,
}

impl ModelSpec {
    /// Ridge with the default grid of 9 log-spaced penalties in [1e-4, 1e4].
    pub fn ridge() -> Self {
        ModelSpec {
            method: Method::Ridge,
            grid: log_grid(1e-4, 1e4, DEFAULT_GRID_POINTS),
            epsilon: DEFAULT_EPSILON,
            target_features: None,
            nested: true,
        }
    }

    /// SVR with the default grid of 9 log-spaced costs in [1e-3, 1e3].
    pub fn svr() -> Self {
        ModelSpec {
            method: Method::Svr,
            grid: log_grid(1e-3, 1e3, DEFAULT_GRID_POINTS),
            epsilon: DEFAULT_EPSILON,
            target_features: None,
            nested: true,
        }
    }

    pub fn with_target(mut self, target_features: usize) -> Self {
        self.target_features = Some(target_features);
        self
    }

    pub fn validate(&self) -> Result<(), RegressError> {
        if self.grid.is_empty() {
            return Err(RegressError::Input("hyperparameter grid is empty".into()));
        }
        for &g in &self.grid {
            if !g.is_finite() || g <= 0.0 {
                return Err(RegressError::Input(format!(
                    "grid values must be finite and positive, got {g}"
                )));
            }
        }
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(RegressError::Input(format!(
                "epsilon must be finite and non-negative, got {}",
                self.epsilon
            )));
        }
        if self.target_features == Some(0) {
            return Err(RegressError::Input(
                "feature-elimination target must keep at least one column".into(),
            ));
        }
        Ok(())
    }
}

/// `n` points spaced evenly in log scale from `lo` to `hi`, both inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2, "need 0 < lo < hi and n >= 2");
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
