use serde::{Deserialize, Serialize};

use crate::error::ExplainError;

pub const DEFAULT_PROBES: usize = 12;
pub const DEFAULT_ITERATIONS: usize = 100;

/// Controls for Monte-Carlo contribution curves: how many probe values to
/// place across a feature's observed range, how many sampled instances to
/// average per probe, and the seed that makes the whole thing reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionConfig {
    pub probes: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl ContributionConfig {
    pub fn new(seed: u64) -> Self {
        ContributionConfig {
            probes: DEFAULT_PROBES,
            iterations: DEFAULT_ITERATIONS,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ExplainError> {
        if self.probes < 2 {
            return Err(ExplainError::Config(format!(
                "need at least 2 probe values, got {}",
                self.probes
            )));
        }
        if self.iterations < 1 {
            return Err(ExplainError::Config("need at least 1 iteration".into()));
        }
        Ok(())
    }
}
