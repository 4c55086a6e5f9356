//! Behavioral knobs driving the simulation: who calls how often, who
//! travels where, how long stays last and how the serosurvey samples.
//!
//! All rate vectors are indexed by department in ascending id order. Call
//! rates are per person per hour; trajectory rates per subscriber per hour;
//! trip propensities are expected trip counts per subscriber over the whole
//! observation window.

use serde::{Deserialize, Serialize};

use crate::error::SynthError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BehaviorPlan {
    pub users_per_department: Vec<u32>,
    /// Calls per person per night hour (01:00-04:59).
    pub cdr_night_rate: Vec<f64>,
    /// Calls per person per hour outside the night window.
    pub cdr_day_rate: Vec<f64>,
    /// Fraction of a department's calls terminating in another department.
    pub cdr_cross_fraction: f64,
    /// Trajectory events per subscriber per night hour.
    pub traj_night_rate: Vec<f64>,
    /// Trajectory events per subscriber per hour outside the night window.
    pub traj_day_rate: Vec<f64>,
    /// Expected trips per subscriber over the window, `[home][dest]`;
    /// diagonal must be zero.
    pub trip_rate: Vec<Vec<f64>>,
    /// Log-normal stay duration: median days and log-scale sigma.
    pub stay_median_days: f64,
    pub stay_log_sigma: f64,
    /// Chance an at-home event happens at a nearby sub-prefecture instead
    /// of the home one, and how far "nearby" reaches.
    pub wander_fraction: f64,
    pub mobility_radius_km: f64,
    /// Log-normal per-call duration: median seconds and log-scale sigma.
    pub call_duration_median_s: f64,
    pub call_duration_log_sigma: f64,
    /// Serosurvey sampling plan.
    pub clusters_per_department: u32,
    pub cluster_tested: u64,
}

impl BehaviorPlan {
    /// Companion to `WorldSpec::small`. Trajectory night activity rises
    /// linearly across departments, so night-behavior features carry a
    /// clean cross-department gradient; call rates vary on an unrelated
    /// pattern. Every department sends trips toward department 1 (the hub)
    /// and its ring neighbor.
    pub fn small(n_departments: u32) -> Self {
        let d = n_departments as usize;
        let mut trip_rate = vec![vec![0.0; d]; d];
        for (home, row) in trip_rate.iter_mut().enumerate() {
            if home != 0 {
                row[0] = 0.6;
            }
            let neighbor = (home + 1) % d;
            if neighbor != home {
                row[neighbor] += 0.3;
            }
        }
        BehaviorPlan {
            users_per_department: vec![50; d],
            cdr_night_rate: (0..d).map(|i| 0.006 + 0.002 * ((i * 3) % 5) as f64).collect(),
            cdr_day_rate: (0..d).map(|i| 0.025 + 0.005 * ((i * 2) % 4) as f64).collect(),
            cdr_cross_fraction: 0.3,
            traj_night_rate: (0..d).map(|i| 0.01 + 0.01 * i as f64).collect(),
            traj_day_rate: (0..d).map(|i| 0.05 + 0.004 * ((i * 5) % 3) as f64).collect(),
            trip_rate,
            stay_median_days: 2.0,
            stay_log_sigma: 0.7,
            wander_fraction: 0.15,
            mobility_radius_km: 45.0,
            call_duration_median_s: 60.0,
            call_duration_log_sigma: 1.0,
            clusters_per_department: 4,
            cluster_tested: 250,
        }
    }

    pub fn n_departments(&self) -> usize {
        self.users_per_department.len()
    }

    pub fn total_users(&self) -> u64 {
        self.users_per_department.iter().map(|&u| u as u64).sum()
    }

    pub fn validate(&self, n_departments: u32) -> Result<(), SynthError> {
        let d = n_departments as usize;
        let check_len = |name: &str, len: usize| {
            if len != d {
                Err(SynthError::BadPlan(format!(
                    "{name} has {len} entries for {d} departments"
                )))
            } else {
                Ok(())
            }
        };
        check_len("users_per_department", self.users_per_department.len())?;
        check_len("cdr_night_rate", self.cdr_night_rate.len())?;
        check_len("cdr_day_rate", self.cdr_day_rate.len())?;
        check_len("traj_night_rate", self.traj_night_rate.len())?;
        check_len("traj_day_rate", self.traj_day_rate.len())?;
        check_len("trip_rate", self.trip_rate.len())?;
        for (i, row) in self.trip_rate.iter().enumerate() {
            check_len("trip_rate row", row.len())?;
            if row[i] != 0.0 {
                return Err(SynthError::BadPlan(format!(
                    "trip_rate diagonal entry {i} must be zero"
                )));
            }
        }
        let nonneg = |name: &str, values: &[f64]| {
            if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                Err(SynthError::BadPlan(format!(
                    "{name} must be non-negative and finite"
                )))
            } else {
                Ok(())
            }
        };
        nonneg("cdr_night_rate", &self.cdr_night_rate)?;
        nonneg("cdr_day_rate", &self.cdr_day_rate)?;
        nonneg("traj_night_rate", &self.traj_night_rate)?;
        nonneg("traj_day_rate", &self.traj_day_rate)?;
        for row in &self.trip_rate {
            nonneg("trip_rate", row)?;
        }
        for (name, v) in [
            ("cdr_cross_fraction", self.cdr_cross_fraction),
            ("wander_fraction", self.wander_fraction),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SynthError::BadPlan(format!("{name} {v} outside [0, 1]")));
            }
        }
        for (name, v) in [
            ("stay_median_days", self.stay_median_days),
            ("stay_log_sigma", self.stay_log_sigma),
            ("mobility_radius_km", self.mobility_radius_km),
            ("call_duration_median_s", self.call_duration_median_s),
            ("call_duration_log_sigma", self.call_duration_log_sigma),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(SynthError::BadPlan(format!("{name} {v} must be positive")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_plan_is_valid() {
        BehaviorPlan::small(8).validate(8).unwrap();
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let plan = BehaviorPlan::small(8);
        assert!(plan.validate(9).is_err());
    }

    #[test]
    fn nonzero_diagonal_is_rejected() {
        let mut plan = BehaviorPlan::small(4);
        plan.trip_rate[2][2] = 0.5;
        assert!(plan.validate(4).is_err());
    }
}
