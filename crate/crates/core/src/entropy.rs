//! Class-wise entropy from same-class nearest-neighbour densities.
//!
//! For every instance `i` of class `c`, the density is the mean inverse
//! distance to its `k` nearest same-class neighbours:
//!
//! ```text
//! λ(i) = (1/|Q(i)|) Σ_{j∈Q(i)} 1 / max(dist(i, j), floor)
//! γ(i) = λ(i) / Σ_{j∈c} λ(j)
//! θ_c  = Σ_{i∈c} −γ(i) log2 γ(i)
//! ```
//!
//! The entropy imbalance of a representation is `max_c θ_c − mean_c θ_c`, and
//! the gain of a machine is the raw imbalance minus the machine's imbalance.
//! Synthetic instances never take part in these computations.

use serde::{Deserialize, Serialize};

use crate::error::{Result, StormError};
use crate::model::Dataset;
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DensityConfig {
    /// Neighbour count; each class uses `min(k, |class| - 1)`.
    pub k: usize,
    /// Lower clamp applied to every neighbour distance.
    pub distance_floor: f64,
}

impl Default for DensityConfig {
    fn default() -> Self {
        Self {
            k: 5,
            distance_floor: 1e-9,
        }
    }
}

impl DensityConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(StormError::Config("density k must be at least 1".into()));
        }
        if !(self.distance_floor > 0.0 && self.distance_floor.is_finite()) {
            return Err(StormError::Config(format!(
                "distance_floor must be positive and finite, got {}",
                self.distance_floor
            )));
        }
        Ok(())
    }
}

/// Euclidean (L2) distance.
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(StormError::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(l2(a, b))
}

#[inline]
pub(crate) fn l2(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Where an entropy report's representation came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportSource {
    Raw { view: String },
    Machine { id: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEntropy {
    pub class: String,
    pub size: usize,
    /// θ in bits.
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub source: ReportSource,
    pub n_instances: usize,
    /// Classes with at least one real instance, in class-set order.
    pub classes: Vec<ClassEntropy>,
    /// η in bits.
    pub imbalance: f64,
}

impl EntropyReport {
    pub fn entropy_of(&self, class: &str) -> Option<f64> {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .map(|c| c.entropy)
    }

    pub fn entropies(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.entropy).collect()
    }
}

/// Per-instance densities and their class-normalized shares, aligned with
/// the dataset's instance order. Synthetic instances hold NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub lambda: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// Real-instance indices per class, in dataset order.
fn class_members(dataset: &Dataset) -> Vec<Vec<usize>> {
    let mut members = vec![Vec::new(); dataset.class_set().len()];
    for (i, (inst, ci)) in dataset
        .instances()
        .iter()
        .zip(dataset.class_indices())
        .enumerate()
    {
        if !inst.synthetic {
            members[ci].push(i);
        }
    }
    members
}

fn check_representations(dataset: &Dataset, reps: &[Vec<f64>]) -> Result<()> {
    if reps.len() != dataset.len() {
        return Err(StormError::Representation(format!(
            "{} representations for {} instances",
            reps.len(),
            dataset.len()
        )));
    }
    let mut dim = None;
    for (inst, r) in dataset.instances().iter().zip(reps) {
        if inst.synthetic {
            continue;
        }
        match dim {
            None => dim = Some(r.len()),
            Some(d) if d != r.len() => {
                return Err(StormError::DimensionMismatch {
                    expected: d,
                    actual: r.len(),
                })
            }
            _ => {}
        }
        if r.iter().any(|x| !x.is_finite()) {
            return Err(StormError::Representation(format!(
                "representation of `{}` is not finite",
                inst.id
            )));
        }
    }
    Ok(())
}

fn knn_among(target: usize, candidates: &[usize], reps: &[Vec<f64>], k: usize) -> Vec<usize> {
    let mut scored: Vec<(f64, usize)> = candidates
        .iter()
        .filter(|&&j| j != target)
        .map(|&j| (l2(&reps[target], &reps[j]), j))
        .collect();
    // stable: equal distances keep dataset order
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    scored.truncate(k);
    scored.into_iter().map(|(_, j)| j).collect()
}

/// `Q(target)`: the `k` nearest other real members of the target's class,
/// nearest first, ties broken by dataset order.
pub fn same_class_knn(
    dataset: &Dataset,
    reps: &[Vec<f64>],
    target: usize,
    config: &DensityConfig,
) -> Result<Vec<usize>> {
    config.validate()?;
    check_representations(dataset, reps)?;
    let inst = dataset
        .instances()
        .get(target)
        .ok_or_else(|| StormError::UnknownInstance(format!("#{target}")))?;
    let ci = dataset
        .class_set()
        .index_of(&inst.label)
        .expect("validated");
    let members = &class_members(dataset)[ci];
    Ok(knn_among(target, members, reps, config.k))
}

/// `λ(target)` over the given neighbour set. An empty set yields the maximal
/// density `1 / distance_floor`.
pub fn instance_density(
    target: usize,
    neighbors: &[usize],
    reps: &[Vec<f64>],
    config: &DensityConfig,
) -> f64 {
    if neighbors.is_empty() {
        return 1.0 / config.distance_floor;
    }
    let total: f64 = neighbors
        .iter()
        .map(|&j| 1.0 / l2(&reps[target], &reps[j]).max(config.distance_floor))
        .sum();
    total / neighbors.len() as f64
}

pub fn density_profile(
    dataset: &Dataset,
    reps: &[Vec<f64>],
    config: &DensityConfig,
    exec: Execution,
) -> Result<DensityProfile> {
    config.validate()?;
    check_representations(dataset, reps)?;
    let members = class_members(dataset);
    let class_of = dataset.class_indices();
    let synthetic: Vec<bool> = dataset.instances().iter().map(|i| i.synthetic).collect();

    let lambda = par::map_range(exec, dataset.len(), |i| {
        if synthetic[i] {
            return f64::NAN;
        }
        let q = knn_among(i, &members[class_of[i]], reps, config.k);
        instance_density(i, &q, reps, config)
    });

    let mut gamma = vec![f64::NAN; dataset.len()];
    for (ci, idx) in members.iter().enumerate() {
        if idx.is_empty() {
            continue;
        }
        let total: f64 = idx.iter().map(|&i| lambda[i]).sum();
        if total.is_nan() || total <= 0.0 {
            return Err(StormError::ZeroDensity(
                dataset.class_set().classes()[ci].clone(),
            ));
        }
        for &i in idx {
            gamma[i] = lambda[i] / total;
        }
    }
    Ok(DensityProfile { lambda, gamma })
}

/// Per-class θ plus η for one representation of the dataset.
pub fn class_entropy(
    dataset: &Dataset,
    reps: &[Vec<f64>],
    config: &DensityConfig,
    source: ReportSource,
) -> Result<EntropyReport> {
    class_entropy_with(dataset, reps, config, source, Execution::default())
}

pub fn class_entropy_with(
    dataset: &Dataset,
    reps: &[Vec<f64>],
    config: &DensityConfig,
    source: ReportSource,
    exec: Execution,
) -> Result<EntropyReport> {
    let profile = density_profile(dataset, reps, config, exec)?;
    let members = class_members(dataset);
    let classes: Vec<ClassEntropy> = members
        .iter()
        .enumerate()
        .filter(|(_, idx)| !idx.is_empty())
        .map(|(ci, idx)| ClassEntropy {
            class: dataset.class_set().classes()[ci].clone(),
            size: idx.len(),
            entropy: shannon_bits(idx.iter().map(|&i| profile.gamma[i])),
        })
        .collect();
    if classes.is_empty() {
        return Err(StormError::Empty("no real instances to assess".into()));
    }
    let imbalance = entropy_imbalance(&classes.iter().map(|c| c.entropy).collect::<Vec<_>>());
    Ok(EntropyReport {
        source,
        n_instances: members.iter().map(Vec::len).sum(),
        classes,
        imbalance,
    })
}

fn shannon_bits(probs: impl Iterator<Item = f64>) -> f64 {
    probs
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `max θ − mean θ`, clamped at zero against rounding.
pub fn entropy_imbalance(entropies: &[f64]) -> f64 {
    if entropies.is_empty() {
        return 0.0;
    }
    let max = entropies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = entropies.iter().sum::<f64>() / entropies.len() as f64;
    (max - mean).max(0.0)
}

/// Raw imbalance minus machine imbalance. Negative when the machine's
/// representation makes things worse.
pub fn entropy_imbalance_gain(raw: &EntropyReport, machine: &EntropyReport) -> Result<f64> {
    if raw.n_instances != machine.n_instances {
        return Err(StormError::ReportMismatch(format!(
            "{} vs {} instances",
            raw.n_instances, machine.n_instances
        )));
    }
    let shape = |r: &EntropyReport| -> Vec<(String, usize)> {
        r.classes
            .iter()
            .map(|c| (c.class.clone(), c.size))
            .collect()
    };
    if shape(raw) != shape(machine) {
        return Err(StormError::ReportMismatch(
            "class composition differs".into(),
        ));
    }
    Ok(raw.imbalance - machine.imbalance)
}
