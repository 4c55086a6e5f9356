//! Migration features from the eleven mobility flow matrices (no stay
//! threshold, then stays longer than 1..=10 days), split by direction:
//! out-migration is a department's off-diagonal row sum, in-migration its
//! off-diagonal column sum, each divided by the number of users homed
//! there. 11 thresholds × 2 directions = 22 columns.

use mobiprev_core::DeptId;
use mobiprev_flows::{FlowKind, FlowMatrix, HomeAssignment};
use ndarray::Array2;

use crate::error::FeaturesError;
use crate::matrix::{ColumnMeta, Family, FeatureMatrix};

/// Expected `min_stay_days` of the input matrices, in order.
pub const MIGRATION_THRESHOLDS: [Option<f64>; 11] = [
    None,
    Some(1.0),
    Some(2.0),
    Some(3.0),
    Some(4.0),
    Some(5.0),
    Some(6.0),
    Some(7.0),
    Some(8.0),
    Some(9.0),
    Some(10.0),
];

fn threshold_label(t: Option<f64>) -> String {
    match t {
        None => "any".into(),
        Some(d) => format!(">{}d", d as u64),
    }
}

/// Builds the 22-column migration block from one mobility matrix per stay
/// threshold. Matrices must arrive in [`MIGRATION_THRESHOLDS`] order with
/// matching `min_stay_days` metadata and identical department sets.
/// Departments with no homed users read 0 in every column — there is no
/// resident to normalize by.
pub fn migration_features(
    matrices: &[FlowMatrix],
    homes: &HomeAssignment,
) -> Result<FeatureMatrix, FeaturesError> {
    if matrices.len() != MIGRATION_THRESHOLDS.len() {
        return Err(FeaturesError::Input(format!(
            "expected {} mobility matrices, got {}",
            MIGRATION_THRESHOLDS.len(),
            matrices.len()
        )));
    }
    for (m, &want) in matrices.iter().zip(MIGRATION_THRESHOLDS.iter()) {
        if m.kind() != FlowKind::Mobility {
            return Err(FeaturesError::Input(format!(
                "matrix for threshold {} is not a mobility matrix",
                threshold_label(want)
            )));
        }
        if m.min_stay_days != want {
            return Err(FeaturesError::Input(format!(
                "matrix ordered at threshold {} carries min_stay_days {:?}",
                threshold_label(want),
                m.min_stay_days
            )));
        }
        if m.departments() != matrices[0].departments() {
            return Err(FeaturesError::Input(
                "mobility matrices cover different department sets".into(),
            ));
        }
    }

    let depts: Vec<DeptId> = matrices[0].departments().to_vec();
    let counts = homes.counts_by_department();
    let users: Vec<f64> = depts
        .iter()
        .map(|d| counts.get(d).copied().unwrap_or(0) as f64)
        .collect();
    let n = depts.len();

    let mut meta = Vec::with_capacity(22);
    let mut data = Array2::zeros((n, 22));
    for (dir, direction) in ["out", "in"].into_iter().enumerate() {
        for (k, (&t, m)) in MIGRATION_THRESHOLDS.iter().zip(matrices).enumerate() {
            let j = dir * MIGRATION_THRESHOLDS.len() + k;
            meta.push(ColumnMeta::new(
                format!("migration {direction} {}", threshold_label(t)),
                Family::Migration,
                None,
                "per resident (home-based user count)",
                false,
            ));
            for i in 0..n {
                if users[i] == 0.0 {
                    continue;
                }
                let flow: f64 = (0..n)
                    .filter(|&o| o != i)
                    .map(|o| if dir == 0 { m.at(i, o) } else { m.at(o, i) })
                    .sum();
                data[(i, j)] = flow / users[i];
            }
        }
    }
    FeatureMatrix::new(depts, meta, data)
}
