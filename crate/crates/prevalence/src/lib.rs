//! Prevalence surfaces from georeferenced survey clusters.
//!
//! Each cluster contributes a Gaussian kernel whose bandwidth adapts to
//! local survey density: the smallest radius enclosing a minimum number of
//! tested persons. Smoothing both the tested and positive counts and
//! taking their ratio yields a prevalence estimate on a regular grid,
//! which aggregates to one estimate per department alongside a
//! survey-volume quality grade.
//!
//! The pipeline is: [`adaptive_bandwidth`] → [`estimate_surface`] →
//! [`department_prevalence`], with [`quality_indicator`] supplying grades.

mod bandwidth;
mod config;
mod department;
mod error;
mod export;
mod quality;
mod surface;
#[cfg(test)]
pub(crate) mod testutil;

pub use bandwidth::{adaptive_bandwidth, Bandwidths};
pub use config::{KernelConfig, QualityThresholds};
pub use department::{department_prevalence, read_estimates, write_estimates};
pub use error::PrevalenceError;
pub use export::export_choropleth;
pub use quality::quality_indicator;
pub use surface::{
    estimate_at, estimate_surface, kernel_weight, PrevalenceField, SurfaceCell, SurfaceSample,
    MIN_DEFINED_WEIGHT, TRUNCATION_BANDWIDTHS,
};
