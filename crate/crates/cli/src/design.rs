//! Regression design assembly: joins the persisted feature matrix with
//! the department prevalence estimates, applying the quality filter.
//!
//! The target is prevalence in percentage points (fraction × 100), so the
//! default SVR tube of ε = 0.1 spans a tenth of a point — meaningful on
//! estimates that range over a few points.

use mobiprev_core::{DeptId, Quality};
use mobiprev_features::{read_meta, Family, FeatureMatrix};
use mobiprev_prevalence::read_estimates;

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;
use crate::paths::OutPaths;
use crate::util::open_reader;

pub struct Design {
    /// Departments in the regression, ascending.
    pub depts: Vec<DeptId>,
    /// Prevalence in percentage points, aligned with `depts`.
    pub y: Vec<f64>,
    pub quality: Vec<Quality>,
    /// The mean-normalized feature matrix restricted to `depts`.
    pub matrix: FeatureMatrix,
}

fn require(stage: &str, path: &std::path::Path, produced_by: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::missing_artifact(stage, path, produced_by))
    }
}

/// Loads the persisted feature matrix (normalized form plus metadata).
pub fn load_feature_matrix(stage: &str, out: &OutPaths) -> Result<FeatureMatrix> {
    require(stage, &out.features(), "features")?;
    require(stage, &out.features_meta(), "features")?;
    let meta = read_meta(open_reader(&out.features_meta())?)
        .map_err(|e| CliError::stage(stage, format!("{}: {e}", out.features_meta().display())))?;
    FeatureMatrix::read_tsv(open_reader(&out.features())?, meta)
        .map_err(|e| CliError::stage(stage, format!("{}: {e}", out.features().display())))
}

/// Joins features and estimates into the filtered design.
pub fn load_design(stage: &str, manifest: &RunManifest, out: &OutPaths) -> Result<Design> {
    let matrix = load_feature_matrix(stage, out)?;
    require(stage, &out.estimates(), "prev")?;
    let estimates = read_estimates(open_reader(&out.estimates())?)
        .map_err(|e| CliError::stage(stage, format!("{}: {e}", out.estimates().display())))?;

    let filter = manifest.quality_filter()?;
    let mut depts = Vec::new();
    let mut y = Vec::new();
    let mut quality = Vec::new();
    let mut rows = Vec::new();
    for e in &estimates {
        if let Some(set) = &filter {
            if !set.contains(&e.quality) {
                continue;
            }
        }
        let row = matrix.row_index(e.department).ok_or_else(|| {
            CliError::stage(
                stage,
                format!(
                    "department {} has a prevalence estimate but no feature row",
                    e.department
                ),
            )
        })?;
        depts.push(e.department);
        y.push(e.prevalence * 100.0);
        quality.push(e.quality);
        rows.push(row);
    }
    if depts.is_empty() {
        return Err(CliError::stage(
            stage,
            "no departments pass the quality filter",
        ));
    }
    let data = matrix.data().select(ndarray::Axis(0), &rows);
    let sub = FeatureMatrix::new(depts.clone(), matrix.meta().to_vec(), data)
        .map_err(|e| CliError::stage(stage, e))?;
    Ok(Design {
        depts,
        y,
        quality,
        matrix: sub,
    })
}

/// Restricts a design matrix to one feature family, keeping row order.
pub fn family_submatrix(stage: &str, matrix: &FeatureMatrix, family: Family) -> Result<FeatureMatrix> {
    let cols: Vec<usize> = matrix
        .meta()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.family == family)
        .map(|(i, _)| i)
        .collect();
    let meta: Vec<_> = cols.iter().map(|&i| matrix.meta()[i].clone()).collect();
    let data = matrix.data().select(ndarray::Axis(1), &cols);
    FeatureMatrix::new(matrix.departments().to_vec(), meta, data)
        .map_err(|e| CliError::stage(stage, e))
}
