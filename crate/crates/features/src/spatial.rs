//! Spatial features: per-user movement geometry reduced to department
//! level by the 95th percentile across resident users.
//!
//! 25 columns: four metrics (gyration, hull area, hull perimeter,
//! diameter) over six point subsets (all, night, weekday, weekend, weekday
//! night, weekend night), plus one total-distance column computed over the
//! full trace.

use std::collections::BTreeMap;

use mobiprev_core::{DeptId, SpatialHierarchy};
use ndarray::Array2;

use crate::error::FeaturesError;
use crate::geometry::{spatial_metrics, METRIC_NAMES};
use crate::matrix::{ColumnMeta, Family, FeatureMatrix};
use crate::traces::{subset_points, total_distance, Subset, UserTrace};

pub const SPATIAL_COLUMNS: usize = METRIC_NAMES.len() * Subset::ALL_SUBSETS.len() + 1;

/// Percentile by linear interpolation between order statistics (the
/// "type 7" rule): rank q·(n−1), fractional part interpolated. Input must
/// be sorted ascending and nonempty, 0 ≤ q ≤ 1.
pub fn percentile_type7(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of an empty sample");
    assert!((0.0..=1.0).contains(&q), "percentile level {q} outside [0, 1]");
    let rank = q * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

const PERCENTILE_LEVEL: f64 = 0.95;

/// Builds the 25-column spatial block. Each department's value is the
/// 95th percentile of the per-user metric over users homed there.
/// Departments with no resident users get all-zero rows and are returned
/// in the second slot so callers can tell "quiet" from "empty".
pub fn spatial_features(
    traces: &[UserTrace],
    hierarchy: &SpatialHierarchy,
) -> Result<(FeatureMatrix, Vec<DeptId>), FeaturesError> {
    let depts: Vec<DeptId> = hierarchy.departments().keys().copied().collect();
    let index: BTreeMap<DeptId, usize> = depts.iter().enumerate().map(|(i, &d)| (d, i)).collect();

    // Per-user values in column order, gathered per home department.
    let mut gathered: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); SPATIAL_COLUMNS]; depts.len()];
    for trace in traces {
        let &i = index.get(&trace.home).ok_or_else(|| {
            FeaturesError::Input(format!(
                "trace for user {} homed in unknown department {}",
                trace.user, trace.home
            ))
        })?;
        let mut j = 0;
        for (m, _) in METRIC_NAMES.iter().enumerate() {
            for subset in Subset::ALL_SUBSETS {
                let pts = subset_points(trace, subset);
                gathered[i][j].push(spatial_metrics(&pts).as_array()[m]);
                j += 1;
            }
        }
        gathered[i][j].push(total_distance(trace));
    }

    let mut meta: Vec<ColumnMeta> = Vec::with_capacity(SPATIAL_COLUMNS);
    for metric in METRIC_NAMES {
        for subset in Subset::ALL_SUBSETS {
            meta.push(ColumnMeta::new(
                format!("{metric} {}", subset.label()),
                Family::Spatial,
                None,
                "95th percentile across resident users",
                false,
            ));
        }
    }
    meta.push(ColumnMeta::new(
        "total distance",
        Family::Spatial,
        None,
        "95th percentile across resident users",
        false,
    ));

    let mut empty = Vec::new();
    let mut data = Array2::zeros((depts.len(), SPATIAL_COLUMNS));
    for (i, per_column) in gathered.iter_mut().enumerate() {
        if per_column[0].is_empty() {
            empty.push(depts[i]);
            continue;
        }
        for (j, values) in per_column.iter_mut().enumerate() {
            values.sort_by(f64::total_cmp);
            data[(i, j)] = percentile_type7(values, PERCENTILE_LEVEL);
        }
    }
    Ok((FeatureMatrix::new(depts, meta, data)?, empty))
}
