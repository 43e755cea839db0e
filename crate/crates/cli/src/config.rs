//! Run configuration: a JSON file with `storm`, `density`,
//! `validation_fraction` and `seed`, every field optional. Flags override
//! file values, and the resolved form is what gets written into artifacts.

use std::path::Path;

use serde::{Deserialize, Serialize};
use storm_core::io::read_json;
use storm_core::{DensityConfig, Result, StormConfig, StormError};

pub const DEFAULT_VALIDATION_FRACTION: f64 = 0.3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub storm: StormConfig,
    pub density: DensityConfig,
    pub validation_fraction: f64,
    /// Seed for the train/validation split.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            storm: StormConfig::default(),
            density: DensityConfig::default(),
            validation_fraction: DEFAULT_VALIDATION_FRACTION,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>, seed: Option<u64>) -> Result<Self> {
        let mut cfg: RunConfig = match path {
            Some(p) => read_json(p)?,
            None => RunConfig::default(),
        };
        if let Some(s) = seed {
            cfg.seed = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.storm.validate()?;
        self.density.validate()?;
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return Err(StormError::Config(format!(
                "validation_fraction must be in (0, 1), got {}",
                self.validation_fraction
            )));
        }
        Ok(())
    }
}
