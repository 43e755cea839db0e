//! SMOTE: synthetic minority oversampling by interpolating between a
//! minority instance and one of its nearest minority neighbours.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::l2;
use crate::error::{Result, StormError};
use crate::model::{Dataset, Instance};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SmoteConfig {
    /// Interpolation neighbours; `None` means `min(5, minority − 1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_smote: Option<usize>,
    /// Minority size after oversampling; `None` means the largest class size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_count: Option<usize>,
    pub seed: u64,
    /// Class to oversample when used from machine training; `None` picks the
    /// smallest class present in the training data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minority_class: Option<String>,
}

/// How one synthetic instance was generated.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticOrigin {
    pub id: String,
    /// Dataset index of the base minority instance.
    pub base: usize,
    /// Dataset index of the neighbour it was interpolated towards.
    pub neighbor: usize,
    pub u: f64,
}

/// `a + u·(b − a)`.
pub fn interpolate(a: &[f64], b: &[f64], u: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + u * (y - x)).collect()
}

pub fn smote_oversample(
    dataset: &Dataset,
    minority_class: &str,
    view: &str,
    config: &SmoteConfig,
) -> Result<Dataset> {
    smote_oversample_traced(dataset, minority_class, view, config).map(|(ds, _)| ds)
}

/// Like [`smote_oversample`], also returning each synthetic point's origin.
pub fn smote_oversample_traced(
    dataset: &Dataset,
    minority_class: &str,
    view: &str,
    config: &SmoteConfig,
) -> Result<(Dataset, Vec<SyntheticOrigin>)> {
    if !dataset.class_set().contains(minority_class) {
        return Err(StormError::Config(format!(
            "unknown minority class `{minority_class}`"
        )));
    }
    if !dataset.has_view(view) {
        return Err(StormError::Config(format!("unknown view `{view}`")));
    }
    let members: Vec<usize> = dataset
        .instances()
        .iter()
        .enumerate()
        .filter(|(_, i)| !i.synthetic && i.label == minority_class)
        .map(|(idx, _)| idx)
        .collect();
    let current = dataset
        .instances()
        .iter()
        .filter(|i| i.label == minority_class)
        .count();
    if members.len() < 2 {
        return Err(StormError::Config(format!(
            "SMOTE needs at least 2 instances of `{minority_class}`, found {}",
            members.len()
        )));
    }
    let k = config.k_smote.unwrap_or_else(|| 5.min(members.len() - 1));
    if k == 0 || k > members.len() - 1 {
        return Err(StormError::Config(format!(
            "k_smote must be in 1..={}, got {k}",
            members.len() - 1
        )));
    }
    let target = config
        .target_count
        .unwrap_or_else(|| dataset.class_counts().into_iter().max().unwrap_or(0));
    if target < current {
        return Err(StormError::Config(format!(
            "target_count {target} is below the current `{minority_class}` count {current}"
        )));
    }

    let points: Vec<&[f64]> = members
        .iter()
        .map(|&i| dataset.instances()[i].view(view))
        .collect::<Result<_>>()?;
    let neighbors: Vec<Vec<usize>> = (0..members.len())
        .map(|a| {
            let mut d: Vec<(f64, usize)> = (0..members.len())
                .filter(|&b| b != a)
                .map(|b| (l2(points[a], points[b]), b))
                .collect();
            d.sort_by(|x, y| x.0.total_cmp(&y.0));
            d.truncate(k);
            d.into_iter().map(|(_, b)| b).collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = dataset.clone();
    let mut origins = Vec::with_capacity(target - current);
    for t in 0..(target - current) {
        let base = rng.random_range(0..members.len());
        let nn = neighbors[base][rng.random_range(0..k)];
        let u: f64 = rng.random();
        let id = fresh_id(&out, &format!("smote-{minority_class}-{t}"));
        let mut inst = Instance::new(id.clone(), minority_class)
            .with_view(view, interpolate(points[base], points[nn], u));
        inst.synthetic = true;
        out.push_synthetic(inst);
        origins.push(SyntheticOrigin {
            id,
            base: members[base],
            neighbor: members[nn],
            u,
        });
    }
    Ok((out, origins))
}

fn fresh_id(dataset: &Dataset, stem: &str) -> String {
    let mut id = stem.to_string();
    let mut n = 0;
    while dataset.position(&id).is_some() {
        n += 1;
        id = format!("{stem}-{n}");
    }
    id
}
