//! Train/validation assignment.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, StormError};
use crate::model::Dataset;

/// Dataset indices for training and validation, each in dataset order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Split {
    pub fn new(mut train: Vec<usize>, mut validation: Vec<usize>) -> Self {
        train.sort_unstable();
        validation.sort_unstable();
        Self {
            train,
            validation,
            validation_fraction: None,
            seed: None,
        }
    }

    pub fn check(&self, dataset: &Dataset) -> Result<()> {
        let n = dataset.len();
        let mut seen = vec![false; n];
        for &i in self.train.iter().chain(&self.validation) {
            if i >= n {
                return Err(StormError::Config(format!("split index {i} out of range")));
            }
            if seen[i] {
                return Err(StormError::Config(format!(
                    "instance #{i} appears twice in the split"
                )));
            }
            seen[i] = true;
        }
        if self.train.is_empty() {
            return Err(StormError::Config("empty training split".into()));
        }
        if self.validation.is_empty() {
            return Err(StormError::Config("empty validation split".into()));
        }
        Ok(())
    }
}

/// Per-class seeded split. Every class with at least two real instances
/// lands in both sides; singletons go to training.
pub fn stratified_split(dataset: &Dataset, validation_fraction: f64, seed: u64) -> Result<Split> {
    if !(validation_fraction > 0.0 && validation_fraction < 1.0) {
        return Err(StormError::Config(format!(
            "validation_fraction must be in (0, 1), got {validation_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let class_of = dataset.class_indices();
    let mut train = Vec::new();
    let mut validation = Vec::new();
    for ci in 0..dataset.class_set().len() {
        let mut members: Vec<usize> = (0..dataset.len())
            .filter(|&i| class_of[i] == ci && !dataset.instances()[i].synthetic)
            .collect();
        members.shuffle(&mut rng);
        let n = members.len();
        let n_val = if n < 2 {
            0
        } else {
            ((n as f64 * validation_fraction).round() as usize).clamp(1, n - 1)
        };
        validation.extend_from_slice(&members[..n_val]);
        train.extend_from_slice(&members[n_val..]);
    }
    let mut split = Split::new(train, validation);
    split.validation_fraction = Some(validation_fraction);
    split.seed = Some(seed);
    split.check(dataset)?;
    Ok(split)
}
