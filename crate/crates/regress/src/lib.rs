//! Department-level regression: fitting, hyperparameter search, feature
//! elimination, honest leave-one-out evaluation, permutation baselines, and
//! non-negative model stacking.
//!
//! The two families are ridge (closed-form, solved in whichever of the
//! column/row spaces is smaller) and linear epsilon-insensitive SVR (exact
//! pairwise dual steps with a certified duality gap).  Both produce a
//! [`FittedModel`] whose `selected` mask indexes the full feature matrix, so
//! models travel with their feature subset and can score full-width rows
//! directly.
//!
//! Evaluation is leave-one-out with the entire pipeline — grid search and
//! recursive feature elimination — re-run inside every training fold by
//! default, so reported metrics never see the held-out row.  Permutation
//! baselines re-run that same pipeline on column-shuffled data to show what
//! luck alone scores.  Everything is deterministic: given the same inputs,
//! seeds, and spec, every function reproduces its output bit for bit.

mod ensemble;
mod error;
mod evaluate;
mod linalg;
mod permute;
mod rfe;
mod ridge;
mod select;
mod spec;
mod svr;

pub use ensemble::{nnls, stack_ensemble, Ensemble};
pub use error::RegressError;
pub use evaluate::{
    loo_evaluate, pearson, read_json, report_from_predictions, rrmse, write_json,
    EvaluationReport,
};
pub use permute::{best_report, permutation_baseline, permute_columns};
pub use rfe::{rfe, RfeOutcome};
pub use ridge::{fit_ridge, FittedModel};
pub use select::{fit, loo_select};
pub use spec::{log_grid, Method, ModelSpec, DEFAULT_EPSILON, DEFAULT_GRID_POINTS};
pub use svr::fit_svr;
