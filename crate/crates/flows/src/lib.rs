//! Flow extraction over validated records: infers home departments, builds
//! communication and mobility matrices (optionally time-filtered or
//! stay-length thresholded), normalizes them by origin population, scores
//! pairwise ties against each department's mean link, and exports the strong
//! subgraph as DOT and GeoJSON.
//!
//! Aggregations are plain associative merges; every map is ordered, so all
//! outputs are deterministic for a given input ordering.

pub mod error;
pub mod export;
pub mod home;
pub mod matrix;
pub mod stays;
pub mod ties;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::FlowsError;
pub use export::{export_dot, export_geojson, prevalence_label};
pub use home::{infer_home, HomeAssignment};
pub use matrix::{
    comm_flow, count_divisors, normalize_flows, pair_strength, population_divisors, BuiltFlow,
    FlowKind, FlowMatrix, TimeFilter,
};
pub use stays::{
    detect_stays, mobility_flow, mobility_from_stays, read_stays_tsv, write_stays_tsv, Stay,
    StayDetection,
};
pub use ties::{candidate_mean, strong_ties, tie_strengths, StrongEdge, Tie, TieSet};
