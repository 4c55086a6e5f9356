use ndarray::{Array2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::RegressError;
use crate::ridge::FittedModel;
use crate::select::{fit, loo_select};
use crate::spec::ModelSpec;

/// Result of recursive feature elimination: the model refit on the
/// surviving columns (whose `selected` field holds full-matrix column
/// indices) plus the column indices in the order they were dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfeOutcome {
    pub model: FittedModel,
    pub eliminated: Vec<usize>,
}

/// Drops one column per round — the one with the smallest absolute
/// coefficient, ties dropping the higher column index — until `target`
/// columns remain, then refits on the survivors.
///
/// With `spec.nested` set, the hyperparameter is re-selected by
/// leave-one-out search at every round and for the final refit; otherwise
/// the value chosen once on the full column set is reused throughout.
/// Inputs are expected to be column-mean normalized so coefficient
/// magnitudes are comparable; the function does not renormalize.
pub fn rfe(
    spec: &ModelSpec,
    x: &Array2<f64>,
    y: &[f64],
    target: usize,
) -> Result<RfeOutcome, RegressError> {
    spec.validate()?;
    let p = x.ncols();
    if target == 0 || target > p {
        return Err(RegressError::Input(format!(
            "elimination target must be in 1..={p}, got {target}"
        )));
    }

    let mut cols: Vec<usize> = (0..p).collect();
    let mut eliminated = Vec::with_capacity(p - target);
    let initial_hyper = loo_select(spec, x, y)?;

    while cols.len() > target {
        let xsub = x.select(Axis(1), &cols);
        let hyper = if spec.nested && cols.len() < p {
            loo_select(spec, &xsub, y)?
        } else {
            initial_hyper
        };
        let model = fit(spec, &xsub, y, hyper)?;

        let mut drop_pos = 0;
        for pos in 1..cols.len() {
            let best = model.coefficients[drop_pos].abs();
            let cand = model.coefficients[pos].abs();
            if cand < best || (cand == best && cols[pos] > cols[drop_pos]) {
                drop_pos = pos;
            }
        }
        eliminated.push(cols.remove(drop_pos));
    }

    let xsub = x.select(Axis(1), &cols);
    let hyper = if spec.nested && cols.len() < p {
        loo_select(spec, &xsub, y)?
    } else {
        initial_hyper
    };
    let mut model = fit(spec, &xsub, y, hyper)?;
    model.selected = cols;
    Ok(RfeOutcome { model, eliminated })
}
