//! Brute-force reference implementations.
//!
//! `oracle_entropy` recomputes class entropies from a full pairwise distance
//! matrix and shares nothing with [`crate::entropy`] except
//! [`euclidean_distance`]. `oracle_best_subset` enumerates every ordered
//! machine sequence up to a small depth and keeps the one with the best
//! validation F1. Both are single-threaded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{euclidean_distance, DensityConfig};
use crate::error::{Result, StormError};
use crate::machines::{train, MachineSpec};
use crate::model::{Dataset, Instance, OriginalClassSet, ViewSchema};
use crate::par::Execution;
use crate::split::Split;
use crate::storm::{metrics_for, route_working_set, CascadeNode, Decision, StormConfig};

pub const ORACLE_MAX_INSTANCES: usize = 500;
pub const ORACLE_MAX_SPECS: usize = 4;
pub const ORACLE_MAX_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEntropy {
    /// `(class, θ)` for classes with at least one real instance.
    pub classes: Vec<(String, f64)>,
    pub imbalance: f64,
}

impl OracleEntropy {
    pub fn entropy_of(&self, class: &str) -> Option<f64> {
        self.classes
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, t)| *t)
    }
}

pub fn oracle_entropy(
    dataset: &Dataset,
    reps: &[Vec<f64>],
    config: &DensityConfig,
) -> Result<OracleEntropy> {
    let n = dataset.len();
    if n > ORACLE_MAX_INSTANCES {
        return Err(StormError::OracleLimit(format!(
            "{n} instances, at most {ORACLE_MAX_INSTANCES} supported"
        )));
    }
    if reps.len() != n {
        return Err(StormError::Representation(format!(
            "{} representations for {n} instances",
            reps.len()
        )));
    }
    if config.k == 0 || config.distance_floor.is_nan() || config.distance_floor <= 0.0 {
        return Err(StormError::Config("invalid density configuration".into()));
    }

    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            dist[i][j] = euclidean_distance(&reps[i], &reps[j])?;
        }
    }

    let insts = dataset.instances();
    let mut classes = Vec::new();
    for class in dataset.class_set().classes() {
        let members: Vec<usize> = (0..n)
            .filter(|&i| !insts[i].synthetic && insts[i].label == *class)
            .collect();
        if members.is_empty() {
            continue;
        }
        let mut lambda = Vec::with_capacity(members.len());
        for &i in &members {
            let mut others: Vec<(f64, usize)> = members
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| (dist[i][j], j))
                .collect();
            others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let q = &others[..config.k.min(others.len())];
            let l = if q.is_empty() {
                1.0 / config.distance_floor
            } else {
                q.iter()
                    .map(|(d, _)| 1.0 / d.max(config.distance_floor))
                    .sum::<f64>()
                    / q.len() as f64
            };
            lambda.push(l);
        }
        let total: f64 = lambda.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(StormError::ZeroDensity(class.clone()));
        }
        let mut theta = 0.0;
        for l in &lambda {
            let g = l / total;
            if g > 0.0 {
                theta -= g * g.log2();
            }
        }
        classes.push((class.clone(), theta.max(0.0)));
    }
    if classes.is_empty() {
        return Err(StormError::Empty("no real instances to assess".into()));
    }
    let max = classes
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean = classes.iter().map(|c| c.1).sum::<f64>() / classes.len() as f64;
    Ok(OracleEntropy {
        classes,
        imbalance: (max - mean).max(0.0),
    })
}

pub fn oracle_gain(raw: &OracleEntropy, machine: &OracleEntropy) -> f64 {
    raw.imbalance - machine.imbalance
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceScore {
    pub sequence: Vec<String>,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestSubset {
    pub sequence: Vec<String>,
    pub f1: f64,
    /// Every sequence that could be built, in enumeration order.
    pub evaluated: Vec<SequenceScore>,
}

/// Enumerates ordered sequences of specs (repetition allowed) of length
/// `1..=max_depth`. Machine `i + 1` is trained on the training instances
/// machine `i` routes to its rare-class block, exactly as the greedy loop
/// does. Sequences whose working set empties or cannot be trained are
/// skipped. Ties keep the shorter sequence, then the earlier one in spec
/// order.
pub fn oracle_best_subset(
    dataset: &Dataset,
    split: &Split,
    specs: &[MachineSpec],
    rare_class: &str,
    storm: &StormConfig,
    max_depth: usize,
) -> Result<BestSubset> {
    if specs.len() > ORACLE_MAX_SPECS {
        return Err(StormError::OracleLimit(format!(
            "{} specs, at most {ORACLE_MAX_SPECS} supported",
            specs.len()
        )));
    }
    if max_depth == 0 || max_depth > ORACLE_MAX_DEPTH {
        return Err(StormError::OracleLimit(format!(
            "depth {max_depth}, must be in 1..={ORACLE_MAX_DEPTH}"
        )));
    }
    let data = crate::storm::check_inputs(
        dataset,
        split,
        specs,
        rare_class,
        None,
        storm,
        &DensityConfig::default(),
    )?;
    let validation = data.subset(&split.validation);
    let psi: Vec<usize> = split
        .train
        .iter()
        .copied()
        .filter(|&i| !data.instances()[i].synthetic)
        .collect();

    let mut search = Search {
        data: &data,
        validation: &validation,
        specs,
        rare_class,
        override_score: storm.override_score,
        max_depth,
        nodes: Vec::new(),
        order: Vec::new(),
        evaluated: Vec::new(),
    };
    search.extend(psi)?;

    let mut best: Option<(usize, &SequenceScore)> = None;
    for (k, s) in search.evaluated.iter().enumerate() {
        let better = match best {
            None => true,
            Some((_, b)) => s.f1 > b.f1 || (s.f1 == b.f1 && s.sequence.len() < b.sequence.len()),
        };
        if better {
            best = Some((k, s));
        }
    }
    let (_, best) = best.ok_or_else(|| StormError::Training {
        machine: "*".into(),
        reason: "no machine sequence could be trained".into(),
    })?;
    let (sequence, f1) = (best.sequence.clone(), best.f1);
    Ok(BestSubset {
        sequence,
        f1,
        evaluated: search.evaluated,
    })
}

struct Search<'a> {
    data: &'a Dataset,
    validation: &'a Dataset,
    specs: &'a [MachineSpec],
    rare_class: &'a str,
    override_score: f64,
    max_depth: usize,
    nodes: Vec<CascadeNode>,
    /// Specs of `nodes`, by index; used to order ties.
    order: Vec<usize>,
    evaluated: Vec<SequenceScore>,
}

impl Search<'_> {
    fn extend(&mut self, psi: Vec<usize>) -> Result<()> {
        if psi.is_empty() {
            return Ok(());
        }
        let psi_data = self.data.subset(&psi);
        for (s, spec) in self.specs.iter().enumerate() {
            let machine = match train(spec, &psi_data) {
                Ok(m) => m,
                Err(e) if e.is_internal() => return Err(e),
                Err(_) => continue,
            };
            let routing = route_working_set(
                &machine,
                &psi_data,
                &psi,
                self.rare_class,
                Execution::Sequential,
            )?;
            self.nodes.push(CascadeNode {
                machine,
                selected_block: routing.selected_block,
                decision: Decision::Stop,
                gini: routing.gini,
                eig: 0.0,
            });
            self.order.push(s);
            let metrics = metrics_for(
                &self.nodes,
                self.rare_class,
                self.override_score,
                self.validation,
                Execution::Sequential,
            )?;
            self.evaluated.push(SequenceScore {
                sequence: self
                    .order
                    .iter()
                    .map(|&k| self.specs[k].id.clone())
                    .collect(),
                f1: metrics.f1,
            });
            if self.nodes.len() < self.max_depth {
                self.nodes.last_mut().expect("pushed").decision = Decision::Recurse;
                self.extend(routing.assigned)?;
            }
            self.nodes.pop();
            self.order.pop();
        }
        Ok(())
    }
}

/// A random small dataset with one view `v`: `n ≤ max_n` instances over 2–4
/// classes of at least two members each, 2–8 dimensions, coordinates
/// uniform in `[-1, 1)`.
pub fn random_small_dataset(seed: u64, max_n: usize) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_classes = rng.random_range(2..=4usize);
    if max_n < 2 * n_classes {
        return Err(StormError::Config(format!(
            "max_n {max_n} is too small for {n_classes} classes"
        )));
    }
    let dim = rng.random_range(2..=8usize);
    let n = rng.random_range(2 * n_classes..=max_n);
    let names: Vec<String> = (0..n_classes).map(|c| format!("c{c}")).collect();
    let class_set = OriginalClassSet::new(names.clone(), names[n_classes - 1].clone())?;
    let instances = (0..n)
        .map(|i| {
            // the first 2·n_classes rows guarantee two members per class
            let c = if i < 2 * n_classes {
                i % n_classes
            } else {
                rng.random_range(0..n_classes)
            };
            let x = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            Instance::new(format!("x{i}"), names[c].clone()).with_view("v", x)
        })
        .collect();
    Dataset::new(class_set, vec![ViewSchema::with_dim("v", dim)], instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::MachineKind;
    use crate::model::LabelPartition;

    fn one_view(rows: &[(&str, Vec<f64>)], classes: &[&str]) -> Dataset {
        let cs = OriginalClassSet::new(
            classes.iter().map(|s| s.to_string()).collect(),
            classes[classes.len() - 1],
        )
        .unwrap();
        let dim = rows[0].1.len();
        let insts = rows
            .iter()
            .enumerate()
            .map(|(i, (c, x))| Instance::new(format!("i{i}"), *c).with_view("v", x.clone()))
            .collect();
        Dataset::new(cs, vec![ViewSchema::with_dim("v", dim)], insts).unwrap()
    }

    #[test]
    fn uniform_square_is_two_bits() {
        let ds = one_view(
            &[
                ("a", vec![0.0, 0.0]),
                ("a", vec![1.0, 0.0]),
                ("a", vec![0.0, 1.0]),
                ("a", vec![1.0, 1.0]),
                ("b", vec![5.0, 5.0]),
                ("b", vec![6.0, 5.0]),
            ],
            &["a", "b"],
        );
        let reps = ds.view_vectors("v").unwrap();
        let o = oracle_entropy(&ds, &reps, &DensityConfig::new(3)).unwrap();
        assert!((o.entropy_of("a").unwrap() - 2.0).abs() < 1e-12);
        assert!((o.entropy_of("b").unwrap() - 1.0).abs() < 1e-12);
        assert!((o.imbalance - 0.5).abs() < 1e-12);
    }

    #[test]
    fn three_to_one_densities() {
        // 1-D points 0, 1/3, 1 with k = 1: λ = 3, 3, 1.5
        let ds = one_view(
            &[
                ("a", vec![0.0]),
                ("a", vec![1.0 / 3.0]),
                ("a", vec![1.0]),
                ("b", vec![0.0]),
                ("b", vec![1.0]),
            ],
            &["a", "b"],
        );
        let reps = ds.view_vectors("v").unwrap();
        let o = oracle_entropy(&ds, &reps, &DensityConfig::new(1)).unwrap();
        let g = [3.0 / 7.5, 3.0 / 7.5, 1.5 / 7.5];
        let expected: f64 = g.iter().map(|p: &f64| -p * p.log2()).sum();
        assert!((o.entropy_of("a").unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn size_limit() {
        let rows: Vec<(&str, Vec<f64>)> = (0..501)
            .map(|i| (if i % 2 == 0 { "a" } else { "b" }, vec![i as f64]))
            .collect();
        let ds = one_view(&rows, &["a", "b"]);
        let reps = ds.view_vectors("v").unwrap();
        assert!(matches!(
            oracle_entropy(&ds, &reps, &DensityConfig::default()),
            Err(StormError::OracleLimit(_))
        ));
    }

    #[test]
    fn best_subset_limits_and_single_spec() {
        let mut rows = Vec::new();
        for i in 0..12 {
            rows.push(("a", vec![i as f64 * 0.1]));
        }
        for i in 0..6 {
            rows.push(("r", vec![10.0 + i as f64 * 0.1]));
        }
        let ds = one_view(&rows, &["a", "r"]);
        let split = Split::new(
            (0..18).filter(|i| i % 3 != 0).collect(),
            (0..18).filter(|i| i % 3 == 0).collect(),
        );
        let spec = MachineSpec::new(
            "m",
            "v",
            LabelPartition::from_strs(&[&["a"], &["r"]]),
            MachineKind::NearestCentroid,
        );
        let cfg = StormConfig::default();
        let best =
            oracle_best_subset(&ds, &split, std::slice::from_ref(&spec), "r", &cfg, 1).unwrap();
        assert_eq!(best.sequence, vec!["m"]);
        assert_eq!(best.f1, 1.0);
        assert!(
            oracle_best_subset(&ds, &split, std::slice::from_ref(&spec), "r", &cfg, 4).is_err()
        );
        let five = vec![spec; 5];
        assert!(matches!(
            oracle_best_subset(&ds, &split, &five, "r", &cfg, 1),
            Err(StormError::OracleLimit(_))
        ));
    }

    #[test]
    fn random_datasets_respect_bounds() {
        for seed in 0..20 {
            let ds = random_small_dataset(seed, 50).unwrap();
            assert!(ds.len() <= 50);
            let k = ds.class_set().len();
            assert!((2..=4).contains(&k));
            assert!(ds.class_counts().iter().all(|&c| c >= 2));
            let d = ds.view_schema("v").unwrap().dim();
            assert!((2..=8).contains(&d));
        }
    }
}
