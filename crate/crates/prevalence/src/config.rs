//! Estimation and grading parameters.

use crate::error::PrevalenceError;

/// Kernel smoothing parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelConfig {
    /// Minimum surveyed persons a bandwidth must enclose, self included.
    pub n_min: u64,
    /// Grid spacing in km. Doubles as the bandwidth floor, which keeps the
    /// 1/h² kernel prefactor away from a singularity.
    pub grid_step_km: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            n_min: 500,
            grid_step_km: 5.0,
        }
    }
}

impl KernelConfig {
    pub fn validate(&self) -> Result<(), PrevalenceError> {
        if self.n_min < 1 {
            return Err(PrevalenceError::BadConfig(
                "n_min must be at least 1".into(),
            ));
        }
        if !(self.grid_step_km.is_finite() && self.grid_step_km > 0.0) {
            return Err(PrevalenceError::BadConfig(format!(
                "grid_step_km {} must be finite and positive",
                self.grid_step_km
            )));
        }
        Ok(())
    }
}

/// Tested-person counts an estimate needs to be graded good or moderate;
/// anything below `moderate` is uncertain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QualityThresholds {
    pub good: u64,
    pub moderate: u64,
}

impl Default for QualityThresholds {
    fn default() -> Self {
        QualityThresholds {
            good: 200,
            moderate: 50,
        }
    }
}

impl QualityThresholds {
    pub fn validate(&self) -> Result<(), PrevalenceError> {
        if self.moderate < 1 {
            return Err(PrevalenceError::BadConfig(
                "moderate threshold must be at least 1".into(),
            ));
        }
        if self.good < self.moderate {
            return Err(PrevalenceError::BadConfig(format!(
                "good threshold {} below moderate threshold {}",
                self.good, self.moderate
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        KernelConfig::default().validate().unwrap();
        QualityThresholds::default().validate().unwrap();
        assert_eq!(KernelConfig::default().n_min, 500);
        assert_eq!(KernelConfig::default().grid_step_km, 5.0);
        assert_eq!(QualityThresholds::default().good, 200);
        assert_eq!(QualityThresholds::default().moderate, 50);
    }

    #[test]
    fn degenerate_configs_are_rejected() {
        assert!(KernelConfig {
            n_min: 0,
            grid_step_km: 5.0
        }
        .validate()
        .is_err());
        assert!(KernelConfig {
            n_min: 500,
            grid_step_km: 0.0
        }
        .validate()
        .is_err());
        assert!(KernelConfig {
            n_min: 500,
            grid_step_km: f64::NAN
        }
        .validate()
        .is_err());
        assert!(QualityThresholds { good: 200, moderate: 0 }.validate().is_err());
        assert!(QualityThresholds { good: 40, moderate: 50 }.validate().is_err());
    }
}
