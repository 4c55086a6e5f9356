//! Aggregation of the cell surface into department-level estimates.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use mobiprev_core::{DeptId, HivEstimate, Quality, SpatialHierarchy};
use serde::{Deserialize, Serialize};

use crate::error::PrevalenceError;
use crate::surface::PrevalenceField;

/// Mean of the defined cells inside each department polygon. Cells carry
/// equal weight: the synthetic population is spread uniformly within a
/// department, so cell weighting and plain averaging coincide.
///
/// Departments whose polygon holds no defined cell borrow the nearest
/// defined cell (by centroid distance) and are forced to `Uncertain`
/// regardless of their survey-volume grade.
pub fn department_prevalence(
    field: &PrevalenceField,
    hierarchy: &SpatialHierarchy,
    grades: &BTreeMap<DeptId, Quality>,
) -> Result<Vec<HivEstimate>, PrevalenceError> {
    let mut sums: BTreeMap<DeptId, (f64, u64)> = BTreeMap::new();
    for cell in field.cells() {
        if let Some(p) = cell.sample.prevalence {
            if let Some(dept) = hierarchy.dept_of_point(cell.center) {
                let entry = sums.entry(dept).or_insert((0.0, 0));
                entry.0 += p;
                entry.1 += 1;
            }
        }
    }

    let mut estimates = Vec::with_capacity(hierarchy.departments().len());
    for (&dept, info) in hierarchy.departments() {
        let grade = grades.get(&dept).copied().unwrap_or(Quality::Uncertain);
        let estimate = match sums.get(&dept) {
            Some(&(sum, n)) => HivEstimate {
                department: dept,
                prevalence: sum / n as f64,
                quality: grade,
            },
            None => {
                let nearest = field
                    .cells()
                    .iter()
                    .filter(|c| c.sample.prevalence.is_some())
                    .min_by(|a, b| {
                        a.center
                            .dist2(info.centroid)
                            .total_cmp(&b.center.dist2(info.centroid))
                    })
                    .ok_or_else(|| {
                        PrevalenceError::Estimate("surface has no defined cells".into())
                    })?;
                HivEstimate {
                    department: dept,
                    prevalence: nearest.sample.prevalence.expect("filtered to defined"),
                    quality: Quality::Uncertain,
                }
            }
        };
        estimates.push(estimate);
    }
    Ok(estimates)
}

#[derive(Serialize, Deserialize)]
struct EstimateRow {
    department: u32,
    prevalence: f64,
    quality: Quality,
}

/// JSON export of department estimates, sorted by department id.
pub fn write_estimates<W: Write>(
    estimates: &[HivEstimate],
    writer: W,
) -> Result<(), PrevalenceError> {
    let mut rows: Vec<EstimateRow> = estimates
        .iter()
        .map(|e| EstimateRow {
            department: e.department.0,
            prevalence: e.prevalence,
            quality: e.quality,
        })
        .collect();
    rows.sort_by_key(|r| r.department);
    serde_json::to_writer_pretty(writer, &rows)?;
    Ok(())
}

pub fn read_estimates<R: Read>(reader: R) -> Result<Vec<HivEstimate>, PrevalenceError> {
    let rows: Vec<EstimateRow> = serde_json::from_reader(reader)?;
    let mut estimates = Vec::with_capacity(rows.len());
    let mut last = None;
    for row in rows {
        if last.map_or(false, |prev| row.department <= prev) {
            return Err(PrevalenceError::Estimate(format!(
                "estimates not in ascending department order at {}",
                row.department
            )));
        }
        if !(row.prevalence.is_finite() && (0.0..=1.0).contains(&row.prevalence)) {
            return Err(PrevalenceError::Estimate(format!(
                "prevalence {} for department {} outside [0, 1]",
                row.prevalence, row.department
            )));
        }
        last = Some(row.department);
        estimates.push(HivEstimate {
            department: DeptId(row.department),
            prevalence: row.prevalence,
            quality: row.quality,
        });
    }
    Ok(estimates)
}
