use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::RegressError;
use crate::evaluate::{loo_evaluate, EvaluationReport};
use crate::spec::ModelSpec;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One generator per (seed, column) pair so each column's shuffle is an
/// independent, reproducible stream regardless of evaluation order.
fn column_stream(seed: u64, column: u64) -> ChaCha8Rng {
    let mut state = seed ^ column.wrapping_mul(0xA076_1D64_78BD_642F);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Shuffles every feature column independently, destroying the row-wise
/// link between features and target while preserving each column's values.
pub fn permute_columns(x: &Array2<f64>, seed: u64) -> Array2<f64> {
    let mut out = x.clone();
    for col in 0..x.ncols() {
        let mut values: Vec<f64> = x.column(col).to_vec();
        values.shuffle(&mut column_stream(seed, col as u64));
        for (row, v) in values.into_iter().enumerate() {
            out[[row, col]] = v;
        }
    }
    out
}

/// Re-runs the full leave-one-out pipeline on column-permuted copies of the
/// data, one per seed.  The spread of these scores is the luck baseline a
/// real model has to clear.
pub fn permutation_baseline(
    spec: &ModelSpec,
    x: &Array2<f64>,
    y: &[f64],
    seeds: &[u64],
) -> Result<Vec<EvaluationReport>, RegressError> {
    if seeds.is_empty() {
        return Err(RegressError::Input("need at least one permutation seed".into()));
    }
    seeds
        .iter()
        .map(|&seed| {
            let shuffled = permute_columns(x, seed);
            let mut report = loo_evaluate(spec, &shuffled, y)?;
            report.permuted = true;
            report.permutation_seed = Some(seed);
            Ok(report)
        })
        .collect()
}

/// The luckiest permuted run: highest correlation wins.
pub fn best_report(reports: &[EvaluationReport]) -> Option<&EvaluationReport> {
    reports.iter().max_by(|a, b| a.rho.total_cmp(&b.rho))
}
