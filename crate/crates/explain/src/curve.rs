use mobiprev_features::FeatureMatrix;
use mobiprev_regress::FittedModel;
use ndarray::Array1;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::ContributionConfig;
use crate::error::ExplainError;
use crate::rng::sample_stream;

/// Direction of a feature's effect at one probe value, judged against the
/// Monte-Carlo spread: the sign is only committed when the mean clears one
/// standard deviation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    Positive,
    Negative,
    Indeterminate,
}

impl SignClass {
    pub fn label(self) -> &'static str {
        match self {
            SignClass::Positive => "positive",
            SignClass::Negative => "negative",
            SignClass::Indeterminate => "indeterminate",
        }
    }

    fn of(mean: f64, std: f64) -> Self {
        if mean.abs() <= std {
            SignClass::Indeterminate
        } else if mean > 0.0 {
            SignClass::Positive
        } else {
            SignClass::Negative
        }
    }
}

/// How setting one feature to each probe value shifts the model's
/// prediction, averaged over randomly composed instances.  Vectors are
/// parallel: one entry per probe, probes strictly increasing across the
/// feature's observed range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContributionCurve {
    pub feature: String,
    pub column: usize,
    pub probes: Vec<f64>,
    pub means: Vec<f64>,
    /// Population standard deviation of the per-iteration shifts.
    pub stds: Vec<f64>,
    pub signs: Vec<SignClass>,
    /// True when the feature's observed range collapsed to a single value,
    /// leaving a lone probe.
    pub constant_feature: bool,
}

/// A maximal run of consecutive probes sharing one sign class, reported by
/// its probe-value endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignRange {
    pub class: SignClass,
    pub from: f64,
    pub to: f64,
}

/// Samples the model's response to pinning `column` at each probe value.
///
/// Per probe and iteration, a background instance is drawn by sampling every
/// selected feature independently and uniformly (with replacement) from its
/// own observed column, the probed feature is overwritten with the probe
/// value, and the recorded shift is the difference between the two
/// predictions.  A feature outside the model's selected mask therefore
/// contributes exactly zero at every probe.
pub fn contribution_curve(
    model: &FittedModel,
    data: &FeatureMatrix,
    column: usize,
    cfg: &ContributionConfig,
) -> Result<ContributionCurve, ExplainError> {
    cfg.validate()?;
    let (rows, cols) = (data.n_rows(), data.n_cols());
    if rows == 0 {
        return Err(ExplainError::Input("feature matrix has no rows".into()));
    }
    if column >= cols {
        return Err(ExplainError::Input(format!(
            "column {column} out of range for {cols} features"
        )));
    }
    if let Some(&bad) = model.selected.iter().find(|&&s| s >= cols) {
        return Err(ExplainError::Input(format!(
            "model selects column {bad} but the matrix has {cols}"
        )));
    }

    let values = data.data().column(column);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut probes: Vec<f64> = if lo == hi {
        vec![lo]
    } else {
        let m = cfg.probes;
        (0..m)
            .map(|j| {
                if j == m - 1 {
                    hi
                } else {
                    lo + (hi - lo) * j as f64 / (m - 1) as f64
                }
            })
            .collect()
    };
    // Guard against float-resolution collapse of neighbouring probes.
    probes.dedup();
    let constant_feature = probes.len() == 1;

    let mut base = Array1::<f64>::zeros(cols);
    let mut means = Vec::with_capacity(probes.len());
    let mut stds = Vec::with_capacity(probes.len());
    let mut signs = Vec::with_capacity(probes.len());
    let mut samples = vec![0.0f64; cfg.iterations];

    for (j, &probe) in probes.iter().enumerate() {
        for (t, slot) in samples.iter_mut().enumerate() {
            let mut rng = sample_stream(cfg.seed, column as u64, j as u64, t as u64);
            for &sel in &model.selected {
                let row = rng.gen_range(0..rows);
                base[sel] = data.data()[[row, sel]];
            }
            let reference = model.predict_row(base.view());
            let kept = base[column];
            base[column] = probe;
            let pinned = model.predict_row(base.view());
            base[column] = kept;
            *slot = pinned - reference;
        }
        let mean = samples.iter().sum::<f64>() / cfg.iterations as f64;
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
            / cfg.iterations as f64;
        let std = var.sqrt();
        means.push(mean);
        stds.push(std);
        signs.push(SignClass::of(mean, std));
    }

    Ok(ContributionCurve {
        feature: data.meta()[column].name.clone(),
        column,
        probes,
        means,
        stds,
        signs,
        constant_feature,
    })
}

/// Collapses a curve into maximal contiguous probe ranges of equal sign.
pub fn classify_ranges(curve: &ContributionCurve) -> Vec<SignRange> {
    let mut out: Vec<SignRange> = Vec::new();
    for (i, &class) in curve.signs.iter().enumerate() {
        match out.last_mut() {
            Some(run) if run.class == class => run.to = curve.probes[i],
            _ => out.push(SignRange {
                class,
                from: curve.probes[i],
                to: curve.probes[i],
            }),
        }
    }
    out
}
