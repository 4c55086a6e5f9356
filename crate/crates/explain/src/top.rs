use mobiprev_features::FeatureMatrix;
use mobiprev_regress::{rfe, ModelSpec};

use crate::error::ExplainError;

/// Default number of features to surface.
pub const DEFAULT_TOP_FEATURES: usize = 3;

/// The `k` columns that survive recursive feature elimination run once on
/// the whole matrix (no held-out folds — this ranks features for
/// inspection, it does not estimate out-of-sample skill).  Returns ascending
/// column indices.
pub fn top_features(
    spec: &ModelSpec,
    data: &FeatureMatrix,
    y: &[f64],
    k: usize,
) -> Result<Vec<usize>, ExplainError> {
    if k > data.n_cols() {
        return Err(ExplainError::Input(format!(
            "asked for {k} top features but the matrix has {}",
            data.n_cols()
        )));
    }
    let outcome = rfe(spec, data.data(), y, k)?;
    Ok(outcome.model.selected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mobiprev_features::{ColumnMeta, Family};
    use ndarray::Array2;

    fn planted_matrix() -> (FeatureMatrix, Vec<f64>) {
        use mobiprev_core::DeptId;
        let rows = 6;
        let cols = 5;
        let mut data = Array2::<f64>::zeros((rows, cols));
        for i in 0..rows {
            for j in 0..cols {
                // Low-amplitude clutter, deterministic and irregular.
                data[[i, j]] = (((i * 7 + j * 13) % 10) as f64 - 4.5) * 0.01;
            }
        }
        for i in 0..rows {
            data[[i, 3]] = i as f64 + 1.0; // the driver
        }
        let y: Vec<f64> = (0..rows).map(|i| 10.0 * (i as f64 + 1.0)).collect();
        let meta: Vec<ColumnMeta> = (0..cols)
            .map(|j| {
                ColumnMeta::new(
                    format!("feature {j}"),
                    Family::Activity,
                    None,
                    "test",
                    false,
                )
            })
            .collect();
        let depts = (1..=rows as u32).map(DeptId).collect();
        (
            FeatureMatrix::new(depts, meta, data).unwrap(),
            y,
        )
    }

    #[test]
    fn the_planted_driver_is_ranked_into_the_top_set() {
        let (m, y) = planted_matrix();
        let top = top_features(&ModelSpec::ridge(), &m, &y, 2).unwrap();
        assert!(top.contains(&3), "driver missing from {top:?}");
        assert_eq!(top.len(), 2);
    }

    #[test]
    fn asking_for_more_features_than_exist_fails() {
        let (m, y) = planted_matrix();
        assert!(top_features(&ModelSpec::ridge(), &m, &y, 6).is_err());
    }
}
