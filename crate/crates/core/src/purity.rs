//! Gini impurity of the original-class mix inside a partition block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, StormError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPurity {
    /// `1 − Σ p_c²`; zero when one class holds every instance.
    pub gini: f64,
    pub counts: BTreeMap<String, usize>,
}

pub fn gini_index<I, S>(labels: I) -> Result<PartitionPurity>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut counts = BTreeMap::new();
    for l in labels {
        *counts.entry(l.as_ref().to_string()).or_insert(0usize) += 1;
    }
    let total: usize = counts.values().sum();
    if total == 0 {
        return Err(StormError::Empty("gini index of an empty label set".into()));
    }
    let total = total as f64;
    let sum_sq: f64 = counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            p * p
        })
        .sum();
    Ok(PartitionPurity {
        gini: (1.0 - sum_sq).max(0.0),
        counts,
    })
}
