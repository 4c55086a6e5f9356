use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::RegressError;
use crate::linalg::cholesky_solve;

/// Non-negative stacking of base-model prediction vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    /// One non-negative weight per base model; no intercept.
    pub weights: Vec<f64>,
    /// Weighted combination of the base predictions, in row order.
    pub predictions: Vec<f64>,
    /// True when every base prediction vector was identically zero, which
    /// forces an all-zero weighting.
    pub all_zero_bases: bool,
}

/// Non-negative least squares by active-set iteration: start from zero,
/// repeatedly admit the column with the largest positive residual
/// correlation, and back off along the segment to the previous iterate
/// whenever the unconstrained solve on the admitted set turns a weight
/// negative.
pub fn nnls(a: &Array2<f64>, y: &[f64]) -> Result<Vec<f64>, RegressError> {
    let (n, k) = (a.nrows(), a.ncols());
    assert_eq!(n, y.len(), "row count must match target length");

    let yv = Array1::from_iter(y.iter().copied());
    let w_scale = {
        let aty = a.t().dot(&yv);
        aty.iter().map(|v| v.abs()).fold(1.0f64, f64::max)
    };
    let tol = 1e-10 * w_scale;

    let mut x = vec![0.0f64; k];
    let mut passive: Vec<usize> = Vec::new();

    // Each pass admits at most one column; the cap allows for retired
    // columns re-entering a few times while keeping termination certain.
    for _ in 0..(3 * k + 10) {
        let xv = Array1::from_iter(x.iter().copied());
        let residual = &yv - &a.dot(&xv);
        let gradient = a.t().dot(&residual);

        let entering = (0..k)
            .filter(|j| !passive.contains(j))
            .map(|j| (j, gradient[j]))
            .max_by(|l, r| l.1.total_cmp(&r.1));
        match entering {
            Some((j, g)) if g > tol => passive.push(j),
            _ => break,
        }

        loop {
            let sub = a.select(ndarray::Axis(1), &passive);
            let gram = sub.t().dot(&sub);
            let rhs = sub.t().dot(&yv);
            let s = match cholesky_solve(&gram, &rhs) {
                Ok(s) => s,
                Err(_) => {
                    // The newest column is linearly dependent on the rest;
                    // it cannot improve the fit, so drop it and stop.
                    passive.pop();
                    return Ok(x);
                }
            };
            if s.iter().all(|&v| v > 0.0) {
                for (pos, &j) in passive.iter().enumerate() {
                    x[j] = s[pos];
                }
                break;
            }
            // Step back until the first weight hits zero, then retire it.
            let mut step = f64::INFINITY;
            for (pos, &j) in passive.iter().enumerate() {
                if s[pos] <= 0.0 {
                    step = step.min(x[j] / (x[j] - s[pos]));
                }
            }
            let scale = passive.iter().map(|&j| x[j].abs()).fold(1.0f64, f64::max);
            for (pos, &j) in passive.iter().enumerate() {
                x[j] += step * (s[pos] - x[j]);
            }
            passive.retain(|&j| {
                if x[j] <= 1e-12 * scale {
                    x[j] = 0.0;
                    false
                } else {
                    true
                }
            });
            if passive.is_empty() {
                break;
            }
        }
    }
    Ok(x)
}

/// Combines base-model leave-one-out prediction vectors by non-negative
/// least squares against the actuals, without an intercept.
///
/// Two degenerate inputs get canonical answers: all-zero bases produce
/// flagged all-zero weights, and bases that are exactly identical share the
/// single fitted weight uniformly (any split would predict the same, so the
/// symmetric one is reported).
pub fn stack_ensemble(bases: &[Vec<f64>], y: &[f64]) -> Result<Ensemble, RegressError> {
    if bases.is_empty() {
        return Err(RegressError::Input("need at least one base model".into()));
    }
    let n = y.len();
    if n == 0 {
        return Err(RegressError::Input("need at least one observation".into()));
    }
    for (i, b) in bases.iter().enumerate() {
        if b.len() != n {
            return Err(RegressError::Input(format!(
                "base {i} has {} predictions but target has {n}",
                b.len()
            )));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(RegressError::Input(format!("base {i} contains non-finite values")));
        }
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(RegressError::Input("target contains non-finite values".into()));
    }

    let k = bases.len();
    if bases.iter().flatten().all(|&v| v == 0.0) {
        return Ok(Ensemble {
            weights: vec![0.0; k],
            predictions: vec![0.0; n],
            all_zero_bases: true,
        });
    }

    if k > 1 && bases.iter().all(|b| b == &bases[0]) {
        let base = &bases[0];
        let dot: f64 = base.iter().zip(y).map(|(a, b)| a * b).sum();
        let norm: f64 = base.iter().map(|v| v * v).sum();
        let total = (dot / norm).max(0.0);
        let share = total / k as f64;
        return Ok(Ensemble {
            weights: vec![share; k],
            predictions: base.iter().map(|v| v * total).collect(),
            all_zero_bases: false,
        });
    }

    let mut a = Array2::<f64>::zeros((n, k));
    for (j, b) in bases.iter().enumerate() {
        for (i, &v) in b.iter().enumerate() {
            a[[i, j]] = v;
        }
    }
    let weights = nnls(&a, y)?;
    let wv = Array1::from_iter(weights.iter().copied());
    let predictions = a.dot(&wv).to_vec();
    Ok(Ensemble {
        weights,
        predictions,
        all_zero_bases: false,
    })
}
