use ndarray::{Array1, Array2, ArrayView1, Axis};
use serde::{Deserialize, Serialize};

use crate::error::RegressError;
use crate::linalg::cholesky_solve;
use crate::spec::Method;

/// A trained linear model.  Coefficients are aligned with `selected`, which
/// holds ascending column indices into the full feature matrix; predictions
/// read only those columns, so rows of any matrix with the original width
/// can be scored regardless of what the eliminated columns contain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FittedModel {
    pub method: Method,
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    pub hyperparameter: f64,
    pub selected: Vec<usize>,
    /// Training diagnostic: 0 for direct solves, the certified duality gap
    /// for iterative fits.
    pub optimizer_residual: f64,
}

impl FittedModel {
    pub fn predict_row(&self, row: ArrayView1<'_, f64>) -> f64 {
        let mut acc = self.intercept;
        for (c, &col) in self.coefficients.iter().zip(&self.selected) {
            acc += c * row[col];
        }
        acc
    }

    pub fn predict(&self, x: &Array2<f64>) -> Vec<f64> {
        x.axis_iter(Axis(0)).map(|r| self.predict_row(r)).collect()
    }
}

pub(crate) fn validate_xy(x: &Array2<f64>, y: &[f64]) -> Result<(), RegressError> {
    if x.nrows() != y.len() {
        return Err(RegressError::Input(format!(
            "feature matrix has {} rows but target has {} values",
            x.nrows(),
            y.len()
        )));
    }
    if x.nrows() < 2 {
        return Err(RegressError::Input(format!(
            "need at least 2 rows to fit, got {}",
            x.nrows()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) || y.iter().any(|v| !v.is_finite()) {
        return Err(RegressError::Input("non-finite value in training data".into()));
    }
    Ok(())
}

/// Column means and the centered copies of `x` and `y`.
pub(crate) fn center(x: &Array2<f64>, y: &[f64]) -> (Array1<f64>, f64, Array2<f64>, Array1<f64>) {
    let n = x.nrows() as f64;
    let x_mean = x.sum_axis(Axis(0)) / n;
    let y_mean = y.iter().sum::<f64>() / n;
    let mut xc = x.clone();
    for mut row in xc.axis_iter_mut(Axis(0)) {
        row -= &x_mean;
    }
    let yc = Array1::from_iter(y.iter().map(|v| v - y_mean));
    (x_mean, y_mean, xc, yc)
}

/// Least squares with an L2 penalty `lambda` on the coefficients.  The
/// intercept is handled by centering and never penalized.  `lambda = 0` is
/// ordinary least squares and fails on rank-deficient designs; any positive
/// `lambda` yields a unique solution.
///
/// For wide designs (more columns than rows) and positive `lambda` the
/// system is solved in its row-space form, which is algebraically identical
/// but cubic in the row count instead of the column count.
pub fn fit_ridge(x: &Array2<f64>, y: &[f64], lambda: f64) -> Result<FittedModel, RegressError> {
    validate_xy(x, y)?;
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(RegressError::Input(format!(
            "regularization strength must be finite and >= 0, got {lambda}"
        )));
    }
    let (n, p) = (x.nrows(), x.ncols());
    let (x_mean, y_mean, xc, yc) = center(x, y);

    let beta = if lambda > 0.0 && p > n {
        // (Xc' Xc + aI)^-1 Xc' y == Xc' (Xc Xc' + aI)^-1 y for a > 0.
        let mut gram = xc.dot(&xc.t());
        for i in 0..n {
            gram[[i, i]] += lambda;
        }
        let alpha = cholesky_solve(&gram, &yc)?;
        xc.t().dot(&alpha)
    } else {
        let mut gram = xc.t().dot(&xc);
        for i in 0..p {
            gram[[i, i]] += lambda;
        }
        let rhs = xc.t().dot(&yc);
        cholesky_solve(&gram, &rhs)?
    };

    let intercept = y_mean - x_mean.dot(&beta);
    Ok(FittedModel {
        method: Method::Ridge,
        coefficients: beta.to_vec(),
        intercept,
        hyperparameter: lambda,
        selected: (0..p).collect(),
        optimizer_residual: 0.0,
    })
}
