//! Planted department prevalence.
//!
//! Prevalence is an affine function of generator-side behavioral quantities
//! (the plan's expected values, not realized draws) plus Gaussian noise,
//! clipped to a plausible band. The full construction is recorded so tests
//! can compare recovered effects against the planted ones.

use std::collections::BTreeMap;

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use chrono::Timelike;
use mobiprev_core::time::is_night_hour;
use mobiprev_core::{DayType, DeptId, PopulationTable, Window};

use crate::error::SynthError;
use crate::plan::BehaviorPlan;
use crate::rng::{purpose, stream};

pub const CLIP_RANGE: (f64, f64) = (0.001, 0.10);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlantConfig {
    /// (generator feature name, coefficient) pairs.
    pub links: Vec<(String, f64)>,
    pub intercept: f64,
    pub noise_sd: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlantedTruth {
    pub intercept: f64,
    pub noise_sd: f64,
    pub links: Vec<(String, f64)>,
    /// Generator-side feature values per department, per linked feature.
    pub feature_values: BTreeMap<String, BTreeMap<u32, f64>>,
    /// Planted prevalence as a fraction, per department id.
    pub prevalence: BTreeMap<u32, f64>,
    pub clip: (f64, f64),
}

impl PlantedTruth {
    pub fn prevalence_of(&self, dept: DeptId) -> Option<f64> {
        self.prevalence.get(&dept.0).copied()
    }
}

/// Hours in the window that are both weekend and inside the night window.
pub fn weekend_night_hours(window: &Window) -> u64 {
    window
        .hours()
        .filter(|h| DayType::of(h.date()) == DayType::Weekend && is_night_hour(h.hour()))
        .count() as u64
}

/// Generator-side feature registry. Values are plan expectations per
/// department, so a linked feature is recoverable from the extracted data
/// up to sampling noise.
fn feature_value(
    name: &str,
    di: usize,
    dept: DeptId,
    plan: &BehaviorPlan,
    pops: &PopulationTable,
    window: &Window,
) -> Result<f64, SynthError> {
    let v = match name {
        "night_rate" => plan.traj_night_rate[di],
        "day_rate" => plan.traj_day_rate[di],
        "cdr_night_rate" => plan.cdr_night_rate[di],
        "cdr_day_rate" => plan.cdr_day_rate[di],
        "weekend_night_activity" => {
            plan.traj_night_rate[di] * weekend_night_hours(window) as f64
        }
        "trip_rate_total" => plan.trip_rate[di].iter().sum(),
        "population" => pops.raw(dept).unwrap_or(f64::NAN),
        other => {
            return Err(SynthError::BadTruth(format!(
                "unknown generator feature {other:?}"
            )))
        }
    };
    if !v.is_finite() {
        return Err(SynthError::BadTruth(format!(
            "feature {name} is undefined for department {dept}"
        )));
    }
    Ok(v)
}

pub fn plant_prevalence(
    dept_ids: &[DeptId],
    plan: &BehaviorPlan,
    pops: &PopulationTable,
    window: &Window,
    config: &PlantConfig,
    seed: u64,
) -> Result<PlantedTruth, SynthError> {
    plan.validate(dept_ids.len() as u32)?;
    if !(config.noise_sd.is_finite() && config.noise_sd >= 0.0) {
        return Err(SynthError::BadTruth(format!(
            "noise_sd {} must be non-negative",
            config.noise_sd
        )));
    }

    let mut feature_values: BTreeMap<String, BTreeMap<u32, f64>> = BTreeMap::new();
    let mut prevalence = BTreeMap::new();
    for (di, &dept) in dept_ids.iter().enumerate() {
        let mut level = config.intercept;
        for (name, coef) in &config.links {
            let v = feature_value(name, di, dept, plan, pops, window)?;
            feature_values
                .entry(name.clone())
                .or_default()
                .insert(dept.0, v);
            level += coef * v;
        }
        if config.noise_sd > 0.0 {
            let mut rng = stream(seed, &[purpose::TRUTH, u64::from(dept.0)]);
            let noise = Normal::new(0.0, config.noise_sd)
                .expect("noise_sd validated above")
                .sample(&mut rng);
            level += noise;
        }
        prevalence.insert(dept.0, level.clamp(CLIP_RANGE.0, CLIP_RANGE.1));
    }
    Ok(PlantedTruth {
        intercept: config.intercept,
        noise_sd: config.noise_sd,
        links: config.links.clone(),
        feature_values,
        prevalence,
        clip: CLIP_RANGE,
    })
}

/// A plant linking prevalence to weekend night activity, scaled so the
/// noiseless prevalence spans roughly [lo, hi] over this plan's departments.
pub fn weekend_night_plant(
    plan: &BehaviorPlan,
    window: &Window,
    lo: f64,
    hi: f64,
    noise_fraction: f64,
) -> PlantConfig {
    let hours = weekend_night_hours(window) as f64;
    let values: Vec<f64> = plan.traj_night_rate.iter().map(|r| r * hours).collect();
    let vmin = values.iter().copied().fold(f64::INFINITY, f64::min);
    let vmax = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (vmax - vmin).max(1e-12);
    let coef = (hi - lo) / span;
    PlantConfig {
        links: vec![("weekend_night_activity".to_string(), coef)],
        intercept: lo - coef * vmin,
        noise_sd: noise_fraction * (hi - lo),
    }
}
