use ndarray::{Array2, Axis};

use crate::error::RegressError;
use crate::ridge::{fit_ridge, validate_xy, FittedModel};
use crate::spec::{Method, ModelSpec};
use crate::svr::fit_svr;

/// Fits the spec's method at one hyperparameter value.
pub fn fit(
    spec: &ModelSpec,
    x: &Array2<f64>,
    y: &[f64],
    hyper: f64,
) -> Result<FittedModel, RegressError> {
    match spec.method {
        Method::Ridge => fit_ridge(x, y, hyper),
        Method::Svr => fit_svr(x, y, hyper, spec.epsilon),
    }
}

pub(crate) fn keep_rows(x: &Array2<f64>, y: &[f64], skip: usize) -> (Array2<f64>, Vec<f64>) {
    let rows: Vec<usize> = (0..x.nrows()).filter(|&r| r != skip).collect();
    let xr = x.select(Axis(0), &rows);
    let yr = rows.iter().map(|&r| y[r]).collect();
    (xr, yr)
}

/// Picks the grid value whose leave-one-out mean squared error is smallest.
/// The grid is scanned in ascending order and ties keep the first, i.e. the
/// smallest, value.
pub fn loo_select(spec: &ModelSpec, x: &Array2<f64>, y: &[f64]) -> Result<f64, RegressError> {
    spec.validate()?;
    validate_xy(x, y)?;
    let n = x.nrows();
    if n < 3 {
        return Err(RegressError::Input(format!(
            "leave-one-out selection needs at least 3 rows, got {n}"
        )));
    }

    let mut grid = spec.grid.clone();
    grid.sort_by(f64::total_cmp);

    let mut best: Option<(f64, f64)> = None;
    for &candidate in &grid {
        let mut sq_sum = 0.0;
        for i in 0..n {
            let (xt, yt) = keep_rows(x, y, i);
            let model = fit(spec, &xt, &yt, candidate)?;
            let err = model.predict_row(x.row(i)) - y[i];
            sq_sum += err * err;
        }
        let mse = sq_sum / n as f64;
        if best.map_or(true, |(_, b)| mse < b) {
            best = Some((candidate, mse));
        }
    }
    Ok(best.expect("grid validated non-empty").0)
}
