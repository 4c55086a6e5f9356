//! Seeded synthetic data generator.
//!
//! Builds a rectangular toy country (departments tiling a grid, each split
//! into sub-prefecture strips holding antennas), then simulates hourly
//! antenna-to-antenna call aggregates, per-subscriber trajectory events with
//! planted trips, serosurvey clusters drawn from a planted prevalence
//! field, and emits the exact file formats the ingestion layer reads.
//!
//! Determinism contract: every random decision draws from a ChaCha stream
//! keyed by `(seed, purpose, entity ids)`, so regenerating with the same
//! spec, plan and seed reproduces output byte for byte, independent of
//! iteration interleaving.

pub mod cdr;
pub mod error;
pub mod output;
pub mod plan;
pub mod rng;
pub mod survey;
pub mod traj;
pub mod truth;
pub mod world;

pub use cdr::generate_cdr;
pub use error::SynthError;
pub use output::{write_dataset, DatasetPaths};
pub use plan::BehaviorPlan;
pub use survey::generate_clusters;
pub use traj::{generate_trajectories, PlannedTrip};
pub use truth::{plant_prevalence, PlantConfig, PlantedTruth};
pub use world::{generate_world, WorldSpec};
