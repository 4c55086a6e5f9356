//! Department-level feature extraction: 224 named columns in four
//! families — 120 connectivity, 25 spatial, 22 migration, 57 activity —
//! assembled into a [`FeatureMatrix`] with per-column metadata.
//!
//! Connectivity comes from antenna-to-antenna call aggregates
//! ([`connectivity_features`]); the other three families come from
//! user trajectories: movement geometry percentiles
//! ([`spatial_features`]), directional per-resident flows over stay
//! thresholds ([`migration_features`]), and phone-event counts
//! ([`activity_features`]). [`FeatureMatrix::hstack`] glues the blocks,
//! [`validate_cardinality`] checks the 120/25/22/57 split, and
//! [`normalize_by_mean`] applies the final column scaling.

mod activity;
mod connectivity;
mod error;
mod geometry;
mod matrix;
mod migration;
mod slots;
mod spatial;
mod traces;
#[cfg(test)]
pub(crate) mod testutil;

pub use activity::{activity_features, activity_tallies, ActivityTallies};
pub use connectivity::{
    connectivity_features, connectivity_tallies, ConnectivityTallies, INNER, ORIGINATING,
    OVERALL, TERMINATING, WINDOW_AGGREGATES,
};
pub use error::FeaturesError;
pub use geometry::{convex_hull, spatial_metrics, SpatialMetrics, METRIC_NAMES};
pub use matrix::{
    normalize_by_mean, read_meta, validate_cardinality, ColumnMeta, Family, FeatureMatrix,
    FAMILY_CARDINALITIES, TOTAL_FEATURES,
};
pub use migration::{migration_features, MIGRATION_THRESHOLDS};
pub use slots::{slot_label, slot_offsets, SLOTS_PER_DAY_TYPE, WHOLE_DAY_SLOT};
pub use spatial::{percentile_type7, spatial_features, SPATIAL_COLUMNS};
pub use traces::{build_traces, subset_points, total_distance, BuiltTraces, Subset, UserTrace};
