//! Model inspection: Monte-Carlo contribution curves that show how each
//! feature's value range pushes a fitted model's prediction, sign-classified
//! against the sampling spread, plus whole-data feature ranking.
//!
//! Background instances are composed by sampling each selected feature
//! independently from its observed values, so curves reflect the model over
//! the data's marginal distributions (feature interactions and joint
//! structure are deliberately out of scope).  Every draw comes from a
//! generator keyed by (seed, feature, probe, iteration), making all outputs
//! bit-reproducible and order-independent.

mod config;
mod curve;
mod error;
mod export;
mod rng;
mod top;

pub use config::{ContributionConfig, DEFAULT_ITERATIONS, DEFAULT_PROBES};
pub use curve::{classify_ranges, contribution_curve, ContributionCurve, SignClass, SignRange};
pub use error::ExplainError;
pub use export::{write_curves_tsv, write_summary_json, CurveSummary};
pub use top::{top_features, DEFAULT_TOP_FEATURES};
