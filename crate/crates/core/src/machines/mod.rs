//! Machines: classifiers trained on one modality view against a coarsened
//! label partition. Each exposes per-block scores, a hard prediction, and a
//! discriminative representation used for entropy assessment.
//!
//! Built-in kinds are nearest-centroid, distance-weighted k-NN, and a
//! one-vs-rest linear scorer. Richer models can be plugged in by producing
//! representations directly and feeding them to the entropy functions.

mod centroid;
mod knn;
mod linear;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::entropy::l2;
use crate::error::{Result, StormError};
use crate::model::{validate_partition, Dataset, Instance, LabelPartition, OriginalClassSet};
use crate::par::{self, Execution};
use crate::resample::{smote_oversample, SmoteConfig};

pub use linear::LinearModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MachineKind {
    NearestCentroid,
    Knn,
    Linear,
}

impl MachineKind {
    fn allowed_hyperparameters(self) -> &'static [&'static str] {
        match self {
            MachineKind::NearestCentroid => &[],
            MachineKind::Knn => &["k"],
            MachineKind::Linear => &["iterations", "learning_rate", "l2", "seed"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineSpec {
    pub id: String,
    pub view: String,
    pub partition: LabelPartition,
    pub kind: MachineKind,
    #[serde(default)]
    pub hyperparameters: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smote: Option<SmoteConfig>,
}

pub const DEFAULT_KNN_K: usize = 5;
pub const DEFAULT_LINEAR_ITERATIONS: usize = 200;
pub const DEFAULT_LINEAR_LEARNING_RATE: f64 = 0.05;
pub const DEFAULT_LINEAR_L2: f64 = 1e-3;
const KNN_DISTANCE_FLOOR: f64 = 1e-9;

impl MachineSpec {
    pub fn new(
        id: impl Into<String>,
        view: impl Into<String>,
        partition: LabelPartition,
        kind: MachineKind,
    ) -> Self {
        Self {
            id: id.into(),
            view: view.into(),
            partition,
            kind,
            hyperparameters: BTreeMap::new(),
            smote: None,
        }
    }

    pub fn with_hyperparameter(mut self, name: &str, value: f64) -> Self {
        self.hyperparameters.insert(name.to_string(), value);
        self
    }

    pub fn with_smote(mut self, smote: SmoteConfig) -> Self {
        self.smote = Some(smote);
        self
    }

    fn param(&self, name: &str) -> Option<f64> {
        self.hyperparameters.get(name).copied()
    }

    fn count_param(&self, name: &str, default: usize, min: usize) -> Result<usize> {
        match self.param(name) {
            None => Ok(default),
            Some(v) if v.fract() == 0.0 && v >= min as f64 && v < 1e9 => Ok(v as usize),
            Some(v) => Err(StormError::Config(format!(
                "machine `{}`: hyperparameter `{name}` must be an integer >= {min}, got {v}",
                self.id
            ))),
        }
    }

    fn real_param(&self, name: &str, default: f64) -> Result<f64> {
        match self.param(name) {
            None => Ok(default),
            Some(v) if v.is_finite() && v >= 0.0 => Ok(v),
            Some(v) => Err(StormError::Config(format!(
                "machine `{}`: hyperparameter `{name}` must be finite and >= 0, got {v}",
                self.id
            ))),
        }
    }

    /// Checks the partition against the class set, the view against the
    /// dataset schema, and the hyperparameters against the kind.
    pub fn validate(&self, class_set: &OriginalClassSet, dataset: &Dataset) -> Result<()> {
        validate_partition(&self.partition, class_set).map_err(StormError::Partition)?;
        if !dataset.has_view(&self.view) {
            return Err(StormError::MachineViewMissing {
                machine: self.id.clone(),
                view: self.view.clone(),
            });
        }
        let allowed = self.kind.allowed_hyperparameters();
        if let Some(name) = self
            .hyperparameters
            .keys()
            .find(|k| !allowed.contains(&k.as_str()))
        {
            return Err(StormError::Config(format!(
                "machine `{}`: unknown hyperparameter `{name}` for {:?}",
                self.id, self.kind
            )));
        }
        match self.kind {
            MachineKind::NearestCentroid => {}
            MachineKind::Knn => {
                self.count_param("k", DEFAULT_KNN_K, 1)?;
            }
            MachineKind::Linear => {
                self.count_param("iterations", DEFAULT_LINEAR_ITERATIONS, 0)?;
                self.count_param("seed", 0, 0)?;
                self.real_param("learning_rate", DEFAULT_LINEAR_LEARNING_RATE)?;
                self.real_param("l2", DEFAULT_LINEAR_L2)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    NearestCentroid {
        centroids: Vec<Vec<f64>>,
    },
    Knn {
        k: usize,
        points: Vec<Vec<f64>>,
        blocks: Vec<usize>,
    },
    Linear(LinearModel),
}

/// The representation a machine exposes for entropy assessment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationKind {
    /// Distance to each block centroid.
    CentroidDistances,
    /// Mean distance to the k nearest training members of each block.
    BlockMeanDistances,
    /// Per-block normalized scores.
    BlockScores,
    /// Per-block raw margins.
    BlockMargins,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSummary {
    /// Training instances per block, synthetic ones included.
    pub block_counts: Vec<usize>,
    /// Real training instances per block, by original class.
    pub block_class_counts: Vec<BTreeMap<String, usize>>,
    /// Most frequent original class per block (ties by class-set order).
    pub block_majority: Vec<String>,
    pub synthetic_added: usize,
    /// Block accuracy on the real training instances.
    pub training_accuracy: f64,
    /// Inter-class minus intra-class mean distance of the chosen representation.
    pub discriminability: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedMachine {
    pub spec: MachineSpec,
    pub model: Model,
    pub representation: RepresentationKind,
    pub summary: TrainingSummary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub block: usize,
    /// Confidence in `block`, in `[0, 1]`.
    pub score: f64,
}

/// Picks the SMOTE minority class and effective config for a training set,
/// or `None` when oversampling is impossible or unnecessary.
fn plan_smote(cfg: &SmoteConfig, data: &Dataset) -> Option<(String, SmoteConfig)> {
    let counts = data.class_counts();
    let classes = data.class_set().classes();
    let minority = match &cfg.minority_class {
        Some(c) => c.clone(),
        None => {
            let (ci, _) = counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .min_by_key(|(i, &c)| (c, *i))?;
            classes[ci].clone()
        }
    };
    let current = counts[data.class_set().index_of(&minority)?];
    if current < 2 {
        return None;
    }
    let largest = counts.iter().copied().max().unwrap_or(0);
    let target = cfg.target_count.unwrap_or(largest).max(current);
    if target == current {
        return None;
    }
    let k = cfg.k_smote.unwrap_or(5).clamp(1, current - 1);
    Some((
        minority,
        SmoteConfig {
            k_smote: Some(k),
            target_count: Some(target),
            seed: cfg.seed,
            minority_class: None,
        },
    ))
}

pub fn train(spec: &MachineSpec, train_data: &Dataset) -> Result<TrainedMachine> {
    spec.validate(train_data.class_set(), train_data)?;
    let fail = |reason: String| StormError::Training {
        machine: spec.id.clone(),
        reason,
    };
    let real = train_data.real_only();
    if real.is_empty() {
        return Err(fail("no training instances".into()));
    }

    let (data, synthetic_added) = match spec.smote.as_ref().and_then(|c| plan_smote(c, &real)) {
        Some((minority, cfg)) => {
            let augmented = smote_oversample(&real, &minority, &spec.view, &cfg)?;
            let added = augmented.len() - real.len();
            (augmented, added)
        }
        None => (real.clone(), 0),
    };

    let n_blocks = spec.partition.len();
    let blocks: Vec<usize> = data
        .instances()
        .iter()
        .map(|i| {
            spec.partition
                .block_of(&i.label)
                .expect("validated partition")
        })
        .collect();
    let mut block_counts = vec![0usize; n_blocks];
    for &b in &blocks {
        block_counts[b] += 1;
    }
    if let Some(b) = block_counts.iter().position(|&c| c == 0) {
        return Err(fail(format!(
            "block {} has no training instances",
            spec.partition.block_label(b)
        )));
    }
    let points = data.view_vectors(&spec.view)?;

    let (model, candidates) = match spec.kind {
        MachineKind::NearestCentroid => (
            Model::NearestCentroid {
                centroids: centroid::fit(&points, &blocks, n_blocks),
            },
            vec![RepresentationKind::CentroidDistances],
        ),
        MachineKind::Knn => (
            Model::Knn {
                k: spec.count_param("k", DEFAULT_KNN_K, 1)?,
                points: points.clone(),
                blocks: blocks.clone(),
            },
            vec![RepresentationKind::BlockMeanDistances],
        ),
        MachineKind::Linear => {
            let params = linear::Params {
                iterations: spec.count_param("iterations", DEFAULT_LINEAR_ITERATIONS, 0)?,
                learning_rate: spec.real_param("learning_rate", DEFAULT_LINEAR_LEARNING_RATE)?,
                l2: spec.real_param("l2", DEFAULT_LINEAR_L2)?,
                seed: spec.count_param("seed", 0, 0)? as u64,
            };
            (
                Model::Linear(linear::fit(&points, &blocks, n_blocks, &params)),
                vec![
                    RepresentationKind::BlockScores,
                    RepresentationKind::BlockMargins,
                ],
            )
        }
    };

    let mut block_class_counts = vec![BTreeMap::new(); n_blocks];
    for inst in real.instances() {
        let b = spec
            .partition
            .block_of(&inst.label)
            .expect("validated partition");
        *block_class_counts[b]
            .entry(inst.label.clone())
            .or_insert(0usize) += 1;
    }
    let block_majority = block_class_counts
        .iter()
        .enumerate()
        .map(|(b, counts)| majority_class(counts, &spec.partition.blocks()[b], real.class_set()))
        .collect();

    let mut machine = TrainedMachine {
        spec: spec.clone(),
        model,
        representation: candidates[0],
        summary: TrainingSummary {
            block_counts,
            block_class_counts,
            block_majority,
            synthetic_added,
            training_accuracy: 0.0,
            discriminability: 0.0,
            validation_accuracy: None,
        },
    };

    // freeze the most discriminative representation on the real training data
    let labels = real.class_indices();
    let mut best: Option<(RepresentationKind, f64)> = None;
    for kind in candidates {
        machine.representation = kind;
        let reps: Vec<Vec<f64>> = real
            .instances()
            .iter()
            .map(|i| machine.representation_of(i))
            .collect::<Result<_>>()?;
        let score = discriminability(&reps, &labels);
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((kind, score));
        }
    }
    let (kind, score) = best.expect("at least one candidate");
    machine.representation = kind;
    machine.summary.discriminability = score;

    let correct = real
        .instances()
        .iter()
        .map(|i| {
            let p = machine.predict(i)?;
            Ok(usize::from(
                Some(p.block) == spec.partition.block_of(&i.label),
            ))
        })
        .sum::<Result<usize>>()?;
    machine.summary.training_accuracy = correct as f64 / real.len() as f64;
    Ok(machine)
}

fn majority_class(
    counts: &BTreeMap<String, usize>,
    block: &[String],
    class_set: &OriginalClassSet,
) -> String {
    let mut members: Vec<&String> = block.iter().collect();
    members.sort_by_key(|c| class_set.index_of(c).unwrap_or(usize::MAX));
    let mut best = members[0];
    let mut best_count = counts.get(best).copied().unwrap_or(0);
    for c in members.into_iter().skip(1) {
        let n = counts.get(c).copied().unwrap_or(0);
        if n > best_count {
            best = c;
            best_count = n;
        }
    }
    best.clone()
}

/// Mean inter-class distance minus mean intra-class distance.
pub fn discriminability(reps: &[Vec<f64>], labels: &[usize]) -> f64 {
    let (mut intra, mut n_intra, mut inter, mut n_inter) = (0.0, 0usize, 0.0, 0usize);
    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let d = l2(&reps[i], &reps[j]);
            if labels[i] == labels[j] {
                intra += d;
                n_intra += 1;
            } else {
                inter += d;
                n_inter += 1;
            }
        }
    }
    let mean = |s: f64, n: usize| if n == 0 { 0.0 } else { s / n as f64 };
    mean(inter, n_inter) - mean(intra, n_intra)
}

impl TrainedMachine {
    pub fn id(&self) -> &str {
        &self.spec.id
    }

    pub fn partition(&self) -> &LabelPartition {
        &self.spec.partition
    }

    pub fn n_blocks(&self) -> usize {
        self.spec.partition.len()
    }

    fn input<'a>(&self, instance: &'a Instance) -> Result<&'a [f64]> {
        let x = instance.view(&self.spec.view)?;
        let expected = match &self.model {
            Model::NearestCentroid { centroids } => centroids[0].len(),
            Model::Knn { points, .. } => points[0].len(),
            Model::Linear(m) => m.mean.len(),
        };
        if x.len() != expected {
            return Err(StormError::DimensionMismatch {
                expected,
                actual: x.len(),
            });
        }
        Ok(x)
    }

    /// Per-block scores summing to one.
    pub fn scores(&self, instance: &Instance) -> Result<Vec<f64>> {
        let x = self.input(instance)?;
        let n_blocks = self.n_blocks();
        Ok(match &self.model {
            Model::NearestCentroid { centroids } => centroid::scores(centroids, x),
            Model::Knn { k, points, blocks } => {
                knn::scores(points, blocks, n_blocks, *k, KNN_DISTANCE_FLOOR, x)
            }
            Model::Linear(m) => m.scores(x),
        })
    }

    /// Most likely block (lowest index on ties) and its score.
    pub fn predict(&self, instance: &Instance) -> Result<Prediction> {
        let scores = self.scores(instance)?;
        let block = match &self.model {
            Model::Linear(m) => argmax(&m.margins(self.input(instance)?)),
            _ => argmax(&scores),
        };
        Ok(Prediction {
            block,
            score: scores[block],
        })
    }

    pub fn representation_of(&self, instance: &Instance) -> Result<Vec<f64>> {
        let x = self.input(instance)?;
        let n_blocks = self.n_blocks();
        Ok(match (&self.model, self.representation) {
            (Model::NearestCentroid { centroids }, _) => centroid::distances(centroids, x),
            (Model::Knn { k, points, blocks }, _) => {
                knn::block_mean_distances(points, blocks, n_blocks, *k, x)
            }
            (Model::Linear(m), RepresentationKind::BlockMargins) => m.margins(x),
            (Model::Linear(m), _) => m.scores(x),
        })
    }

    pub fn predict_all(&self, dataset: &Dataset, exec: Execution) -> Result<Vec<Prediction>> {
        par::map_slice(exec, dataset.instances(), |i| self.predict(i))
            .into_iter()
            .collect()
    }

    pub fn represent_all(&self, dataset: &Dataset, exec: Execution) -> Result<Vec<Vec<f64>>> {
        par::map_slice(exec, dataset.instances(), |i| self.representation_of(i))
            .into_iter()
            .collect()
    }

    /// Mean score assigned to the correct block over a validation set.
    pub fn confidence(&self, validation: &Dataset) -> Result<f64> {
        if validation.is_empty() {
            return Err(StormError::Empty(
                "confidence on an empty validation set".into(),
            ));
        }
        let mut total = 0.0;
        for inst in validation.instances() {
            let block = self.spec.partition.block_of(&inst.label).ok_or_else(|| {
                StormError::Dataset(format!("label `{}` is outside the partition", inst.label))
            })?;
            total += self.scores(inst)?[block];
        }
        Ok(total / validation.len() as f64)
    }

    /// Fraction of instances whose predicted block contains their label.
    pub fn block_accuracy(&self, dataset: &Dataset) -> Result<f64> {
        if dataset.is_empty() {
            return Err(StormError::Empty("accuracy on an empty dataset".into()));
        }
        let mut correct = 0usize;
        for inst in dataset.instances() {
            let p = self.predict(inst)?;
            if Some(p.block) == self.spec.partition.block_of(&inst.label) {
                correct += 1;
            }
        }
        Ok(correct as f64 / dataset.len() as f64)
    }
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}
