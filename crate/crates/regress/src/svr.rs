use ndarray::{Array1, Array2};

use crate::error::RegressError;
use crate::ridge::{center, validate_xy, FittedModel};
use crate::spec::Method;

const MAX_ITER: usize = 2_000_000;
/// Relative duality gap required to certify a fit.
const GAP_TOL: f64 = 1e-6;

/// Linear regression under the epsilon-insensitive loss:
///
///   minimize  0.5 |w|^2 + cost * sum_i max(0, |y_i - w.x_i - b| - epsilon)
///
/// Solved in the dual by exact pairwise coordinate steps on the
/// box-constrained variables, with the single equality constraint kept by
/// construction.  The fit is only returned once the measured duality gap is
/// at most 1e-6 relative to the primal objective; otherwise the gap is
/// reported in a convergence error.
pub fn fit_svr(
    x: &Array2<f64>,
    y: &[f64],
    cost: f64,
    epsilon: f64,
) -> Result<FittedModel, RegressError> {
    validate_xy(x, y)?;
    if !cost.is_finite() || cost <= 0.0 {
        return Err(RegressError::Input(format!(
            "cost must be finite and positive, got {cost}"
        )));
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(RegressError::Input(format!(
            "epsilon must be finite and non-negative, got {epsilon}"
        )));
    }

    let n = x.nrows();
    let (x_mean, y_mean, xc, yc) = center(x, y);
    let k = xc.dot(&xc.t());

    // Dual variables come in pairs: index i is the positive-side multiplier
    // for row i, index i + n the negative side.  sign(a) tracks the equality
    // constraint sum_i (alpha_i - alpha_{i+n}) = 0.
    let two_n = 2 * n;
    let sign = |a: usize| if a < n { 1.0 } else { -1.0 };
    let row = |a: usize| if a < n { a } else { a - n };
    let lin = |a: usize| {
        if a < n {
            epsilon - yc[a]
        } else {
            epsilon + yc[a - n]
        }
    };

    let mut alpha = vec![0.0f64; two_n];
    let mut grad: Vec<f64> = (0..two_n).map(lin).collect();

    let scale0 = grad.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let floor_tol = 1e-15 * scale0;
    let mut stop_tol = 1e-3 * scale0;
    let mut iter = 0usize;

    let (theta, bias, gap_rel) = loop {
        // Maximal violating pair.
        let mut up_best = f64::NEG_INFINITY;
        let mut up_idx = usize::MAX;
        let mut low_best = f64::INFINITY;
        let mut low_idx = usize::MAX;
        for c in 0..two_n {
            let v = -sign(c) * grad[c];
            let can_up = if c < n { alpha[c] < cost } else { alpha[c] > 0.0 };
            let can_low = if c < n { alpha[c] > 0.0 } else { alpha[c] < cost };
            if can_up && v > up_best {
                up_best = v;
                up_idx = c;
            }
            if can_low && v < low_best {
                low_best = v;
                low_idx = c;
            }
        }
        let violation = up_best - low_best;

        if violation <= stop_tol || iter >= MAX_ITER {
            let theta: Vec<f64> = (0..n).map(|i| alpha[i] - alpha[i + n]).collect();
            let kt: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| k[[i, j]] * theta[j]).sum())
                .collect();
            let quad: f64 = theta.iter().zip(&kt).map(|(t, v)| t * v).sum();
            let dual_value = -(0.5 * quad + epsilon * alpha.iter().sum::<f64>()
                - yc.iter().zip(&theta).map(|(a, b)| a * b).sum::<f64>());

            // Any bias gives a feasible primal point; try the free-variable
            // estimate and the violation midpoint, keep the better bound.
            let mut candidates = vec![0.5 * (up_best + low_best)];
            let free: Vec<f64> = (0..two_n)
                .filter(|&c| alpha[c] > 0.0 && alpha[c] < cost)
                .map(|c| -sign(c) * grad[c])
                .collect();
            if !free.is_empty() {
                candidates.push(free.iter().sum::<f64>() / free.len() as f64);
            }
            let primal_at = |b: f64| {
                0.5 * quad
                    + cost
                        * (0..n)
                            .map(|i| (yc[i] - kt[i] - b).abs() - epsilon)
                            .map(|e| e.max(0.0))
                            .sum::<f64>()
            };
            let (bias, primal) = candidates
                .into_iter()
                .map(|b| (b, primal_at(b)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("at least one bias candidate");

            let gap = primal - dual_value;
            let rel = gap / primal.abs().max(1.0);
            if rel <= GAP_TOL {
                break (theta, bias, rel.max(0.0));
            }
            if iter >= MAX_ITER || stop_tol <= floor_tol {
                return Err(RegressError::NonConvergence {
                    message: format!("{iter} pair updates on {n} rows"),
                    residual: rel,
                });
            }
            stop_tol /= 100.0;
            // Refresh the gradient from scratch so accumulated rounding
            // cannot mislead pair selection at tighter tolerances.
            for c in 0..two_n {
                grad[c] = sign(c) * kt[row(c)] + lin(c);
            }
            continue;
        }

        // Exact minimization over the chosen pair along the direction that
        // preserves the equality constraint.
        let (ra, rb) = (row(up_idx), row(low_idx));
        let curv = k[[ra, ra]] + k[[rb, rb]] - 2.0 * k[[ra, rb]];
        let unbounded = if curv > 0.0 {
            violation / curv
        } else {
            f64::INFINITY
        };
        let cap_up = if up_idx < n {
            cost - alpha[up_idx]
        } else {
            alpha[up_idx]
        };
        let cap_low = if low_idx < n {
            alpha[low_idx]
        } else {
            cost - alpha[low_idx]
        };
        let t = unbounded.min(cap_up).min(cap_low);

        if t >= cap_up {
            alpha[up_idx] = if up_idx < n { cost } else { 0.0 };
        } else {
            alpha[up_idx] += t * sign(up_idx);
        }
        if t >= cap_low {
            alpha[low_idx] = if low_idx < n { 0.0 } else { cost };
        } else {
            alpha[low_idx] -= t * sign(low_idx);
        }
        for c in 0..two_n {
            grad[c] += t * sign(c) * (k[[row(c), ra]] - k[[row(c), rb]]);
        }
        iter += 1;
    };

    let beta: Array1<f64> = xc.t().dot(&Array1::from(theta));
    let intercept = bias + y_mean - x_mean.dot(&beta);
    Ok(FittedModel {
        method: Method::Svr,
        coefficients: beta.to_vec(),
        intercept,
        hyperparameter: cost,
        selected: (0..x.ncols()).collect(),
        optimizer_residual: gap_rel,
    })
}
