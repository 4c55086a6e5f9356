use ndarray::{Array2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::RegressError;
use crate::rfe::rfe;
use crate::ridge::validate_xy;
use crate::select::{fit, keep_rows, loo_select};
use crate::spec::ModelSpec;

/// Out-of-sample quality of one model under leave-one-out evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// Pearson correlation between held-out predictions and actuals;
    /// reported as 0 with `degenerate_predictions` set when either side has
    /// zero variance.
    pub rho: f64,
    /// Root mean squared error divided by the mean of the actuals.
    pub rrmse: f64,
    /// Held-out prediction for each row, in row order.
    pub predictions: Vec<f64>,
    pub degenerate_predictions: bool,
    /// True when the feature matrix was column-permuted before evaluation.
    pub permuted: bool,
    pub permutation_seed: Option<u64>,
}

/// Pearson correlation; `None` when either argument has zero variance.
/// (The n-1 sample normalization cancels in the ratio, so this matches the
/// sample-covariance convention exactly.)
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    assert_eq!(a.len(), b.len(), "correlation needs equal lengths");
    let n = a.len() as f64;
    let (ma, mb) = (
        a.iter().sum::<f64>() / n,
        b.iter().sum::<f64>() / n,
    );
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 || sbb == 0.0 {
        None
    } else {
        Some(sab / (saa * sbb).sqrt())
    }
}

/// Root mean squared error relative to the mean of the actual values.
/// Infinite when that mean is zero; callers here regress strictly positive
/// quantities.
pub fn rrmse(predictions: &[f64], actual: &[f64]) -> f64 {
    assert_eq!(predictions.len(), actual.len(), "rrmse needs equal lengths");
    assert!(!actual.is_empty(), "rrmse needs at least one value");
    let n = actual.len() as f64;
    let mse = predictions
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum::<f64>()
        / n;
    let mean = actual.iter().sum::<f64>() / n;
    if mean == 0.0 {
        f64::INFINITY
    } else {
        mse.sqrt() / mean
    }
}

/// Builds the metric block shared by real, permuted, and ensemble runs.
pub fn report_from_predictions(predictions: Vec<f64>, actual: &[f64]) -> EvaluationReport {
    let (rho, degenerate) = match pearson(&predictions, actual) {
        Some(r) => (r, false),
        None => (0.0, true),
    };
    EvaluationReport {
        rho,
        rrmse: rrmse(&predictions, actual),
        predictions,
        degenerate_predictions: degenerate,
        permuted: false,
        permutation_seed: None,
    }
}

/// Leave-one-out evaluation of the full modelling pipeline.
///
/// With `spec.nested` (the default), hyperparameter search — and feature
/// elimination when `spec.target_features` is set — run from scratch inside
/// every training fold, so no held-out row influences any selection step.
/// The non-nested variant selects once on all rows and folds only refit
/// coefficients; it exists to measure how much that leak flatters the
/// metrics.
pub fn loo_evaluate(
    spec: &ModelSpec,
    x: &Array2<f64>,
    y: &[f64],
) -> Result<EvaluationReport, RegressError> {
    spec.validate()?;
    validate_xy(x, y)?;
    let n = x.nrows();
    if n < 3 {
        return Err(RegressError::Input(format!(
            "leave-one-out evaluation needs at least 3 rows, got {n}"
        )));
    }

    let fixed = if spec.nested {
        None
    } else {
        Some(match spec.target_features {
            Some(t) => {
                let out = rfe(spec, x, y, t)?;
                (out.model.selected.clone(), out.model.hyperparameter)
            }
            None => ((0..x.ncols()).collect(), loo_select(spec, x, y)?),
        })
    };

    let mut predictions = Vec::with_capacity(n);
    for i in 0..n {
        let (xt, yt) = keep_rows(x, y, i);
        let model = match &fixed {
            None => match spec.target_features {
                Some(t) => rfe(spec, &xt, &yt, t)?.model,
                None => {
                    let hyper = loo_select(spec, &xt, &yt)?;
                    fit(spec, &xt, &yt, hyper)?
                }
            },
            Some((mask, hyper)) => {
                let xm = xt.select(Axis(1), mask);
                let mut model = fit(spec, &xm, &yt, *hyper)?;
                model.selected = mask.clone();
                model
            }
        };
        predictions.push(model.predict_row(x.row(i)));
    }
    Ok(report_from_predictions(predictions, y))
}

/// Serializes any report-shaped value as pretty JSON.
pub fn write_json<W: std::io::Write, T: Serialize>(value: &T, mut w: W) -> Result<(), RegressError> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// Reads back a value written by [`write_json`].
pub fn read_json<R: std::io::Read, T: for<'de> Deserialize<'de>>(r: R) -> Result<T, RegressError> {
    Ok(serde_json::from_reader(r)?)
}
