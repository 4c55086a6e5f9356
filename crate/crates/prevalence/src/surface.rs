//! Kernel-smoothed prevalence surface on a regular grid.
//!
//! Every grid cell carries two kernel-weighted sums — tested persons and
//! positives — and their ratio as the prevalence estimate. The raw sums
//! stay on the cell so the unnormalized smoother output remains
//! inspectable. Cells whose tested mass falls below [`MIN_DEFINED_WEIGHT`]
//! are flagged undefined rather than silently reported as zero.

use std::f64::consts::TAU;
use std::io::Write;

use mobiprev_core::{Point, Rect, SurveyCluster};

use crate::bandwidth::{validate_clusters, Bandwidths};
use crate::config::KernelConfig;
use crate::error::PrevalenceError;

/// Kernel support radius in bandwidths. The discarded Gaussian tail beyond
/// three bandwidths carries exp(−9/2) ≈ 1.1% of the kernel mass.
pub const TRUNCATION_BANDWIDTHS: f64 = 3.0;

/// Smallest kernel-weighted tested mass that still defines a ratio.
pub const MIN_DEFINED_WEIGHT: f64 = 1e-12;

/// Gaussian kernel contribution of a sample at `distance_km` smoothed with
/// bandwidth `h`: exp(−(d/h)²/2) / (2π h²). The 1/h² prefactor makes the
/// kernel a planar density, so wider bandwidths spread the same mass.
pub fn kernel_weight(distance_km: f64, h: f64) -> f64 {
    let u = distance_km / h;
    (-0.5 * u * u).exp() / (TAU * h * h)
}

/// Smoother output at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    /// Σᵢ wᵢ · n_testedᵢ — the unnormalized kernel sum over tested counts.
    pub weighted_tested: f64,
    /// Σᵢ wᵢ · n_positiveᵢ — the same sum over positive counts.
    pub weighted_positive: f64,
    /// Ratio of the two sums; `None` when the tested mass is negligible.
    pub prevalence: Option<f64>,
}

/// Evaluate the smoother at an arbitrary point. Contributions beyond
/// [`TRUNCATION_BANDWIDTHS`] · hᵢ are dropped.
pub fn estimate_at(clusters: &[SurveyCluster], bandwidths: &Bandwidths, p: Point) -> SurfaceSample {
    debug_assert_eq!(clusters.len(), bandwidths.h.len());
    let mut weighted_tested = 0.0;
    let mut weighted_positive = 0.0;
    for (c, &h) in clusters.iter().zip(&bandwidths.h) {
        let d = c.location.dist(p);
        if d <= TRUNCATION_BANDWIDTHS * h {
            let w = kernel_weight(d, h);
            weighted_tested += w * c.n_tested as f64;
            weighted_positive += w * c.n_positive as f64;
        }
    }
    let prevalence = if weighted_tested >= MIN_DEFINED_WEIGHT {
        Some(weighted_positive / weighted_tested)
    } else {
        None
    };
    SurfaceSample {
        weighted_tested,
        weighted_positive,
        prevalence,
    }
}

/// One grid cell: its center and the smoother output there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceCell {
    pub center: Point,
    pub sample: SurfaceSample,
}

/// Regular grid of smoothed estimates covering a bounding box. Cells are
/// stored row-major, x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct PrevalenceField {
    origin: Point,
    grid_step_km: f64,
    nx: usize,
    ny: usize,
    cells: Vec<SurfaceCell>,
}

impl PrevalenceField {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn grid_step_km(&self) -> f64 {
        self.grid_step_km
    }

    /// Lower-left corner of the covered box (not a cell center).
    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn cells(&self) -> &[SurfaceCell] {
        &self.cells
    }

    pub fn cell(&self, ix: usize, iy: usize) -> Option<&SurfaceCell> {
        if ix < self.nx && iy < self.ny {
            self.cells.get(iy * self.nx + ix)
        } else {
            None
        }
    }

    /// TSV export, one row per cell: `x`, `y`, `prevalence` (`NA` when
    /// undefined), and a 0/1 defined flag.
    pub fn write_tsv<W: Write>(&self, mut writer: W) -> Result<(), PrevalenceError> {
        writeln!(writer, "x\ty\tprevalence\tdefined")?;
        for cell in &self.cells {
            match cell.sample.prevalence {
                Some(p) => writeln!(writer, "{}\t{}\t{}\t1", cell.center.x, cell.center.y, p)?,
                None => writeln!(writer, "{}\t{}\tNA\t0", cell.center.x, cell.center.y)?,
            }
        }
        Ok(())
    }
}

fn cells_spanning(extent: f64, step: f64) -> usize {
    ((extent / step).ceil() as usize).max(1)
}

/// Smooth the survey onto a grid of `cfg.grid_step_km` cells covering
/// `bbox`. Cell centers sit half a step inside the box, and the last
/// row/column may overhang when the box is not a whole number of steps.
pub fn estimate_surface(
    clusters: &[SurveyCluster],
    bandwidths: &Bandwidths,
    cfg: &KernelConfig,
    bbox: Rect,
) -> Result<PrevalenceField, PrevalenceError> {
    cfg.validate()?;
    if clusters.is_empty() {
        return Err(PrevalenceError::NoClusters);
    }
    validate_clusters(clusters)?;
    if bandwidths.h.len() != clusters.len() {
        return Err(PrevalenceError::Estimate(format!(
            "{} bandwidths for {} clusters",
            bandwidths.h.len(),
            clusters.len()
        )));
    }
    for &h in &bandwidths.h {
        if !(h.is_finite() && h > 0.0) {
            return Err(PrevalenceError::Estimate(format!(
                "bandwidth {h} must be finite and positive"
            )));
        }
    }
    let corners_finite = bbox.min.x.is_finite()
        && bbox.min.y.is_finite()
        && bbox.max.x.is_finite()
        && bbox.max.y.is_finite();
    if !corners_finite || bbox.width() < 0.0 || bbox.height() < 0.0 {
        return Err(PrevalenceError::Estimate(
            "bounding box must be finite with max ≥ min".into(),
        ));
    }

    let step = cfg.grid_step_km;
    let nx = cells_spanning(bbox.width(), step);
    let ny = cells_spanning(bbox.height(), step);
    let mut cells = Vec::with_capacity(nx * ny);
    // Cells are independent of each other; this loop is a pure map over
    // cell centers in deterministic row-major order.
    for iy in 0..ny {
        for ix in 0..nx {
            let center = Point::new(
                bbox.min.x + (ix as f64 + 0.5) * step,
                bbox.min.y + (iy as f64 + 0.5) * step,
            );
            cells.push(SurfaceCell {
                center,
                sample: estimate_at(clusters, bandwidths, center),
            });
        }
    }
    Ok(PrevalenceField {
        origin: bbox.min,
        grid_step_km: step,
        nx,
        ny,
        cells,
    })
}
