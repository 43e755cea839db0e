//! Fixed synthetic setups used by the acceptance suite, the benches and
//! `storm generate --preset`.
//!
//! Parameters were frozen on development seeds 1000..1100, disjoint from
//! the seeds the acceptance suite uses.

use std::collections::BTreeMap;

use crate::machines::{MachineKind, MachineSpec};
use crate::model::LabelPartition;
use crate::resample::SmoteConfig;

use super::synthetic::{ClassCount, GeneratorKind, SyntheticSpec, ViewGenerator};

/// Seed offset between a preset's training data and its held-out test data.
pub const TEST_SEED_OFFSET: u64 = 1_000_000;

fn counts(pairs: &[(&str, usize)]) -> Vec<ClassCount> {
    pairs
        .iter()
        .map(|&(name, count)| ClassCount {
            name: name.to_string(),
            count,
        })
        .collect()
}

fn noise(name: &str, dim: usize) -> ViewGenerator {
    ViewGenerator {
        name: name.to_string(),
        dim,
        kind: GeneratorKind::Noise { scale: 1.0 },
    }
}

fn axis(dim: usize, value: f64) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[0] = value;
    v
}

pub mod planted {
    use super::*;

    pub const RARE: &str = "rare";
    pub const RAW_VIEW: &str = "raw";
    pub const SIGNAL_VIEW: &str = "signal";
    pub const NOISE_VIEW: &str = "noise";
    /// Id of the machine whose representation the imbalance checks use.
    pub const SIGNAL_MACHINE: &str = "signal-knn";
    pub const NOISE_MACHINE: &str = "noise-knn";

    /// Three classes (4.3% rare), a 32-dimensional pure-noise raw view, a
    /// 4-dimensional informative view and a 4-dimensional noise view.
    pub fn dataset(seed: u64) -> SyntheticSpec {
        SyntheticSpec {
            classes: counts(&[("common", 120), ("other", 60), (RARE, 8)]),
            rare_class: RARE.to_string(),
            views: vec![
                noise(RAW_VIEW, 32),
                ViewGenerator {
                    name: SIGNAL_VIEW.to_string(),
                    dim: 4,
                    kind: GeneratorKind::Informative {
                        margin: 3.0,
                        scale: 1.0,
                        means: BTreeMap::new(),
                    },
                },
                noise(NOISE_VIEW, 4),
            ],
            seed,
        }
    }

    /// k-NN and nearest-centroid on the informative view, k-NN on noise.
    pub fn specs() -> Vec<MachineSpec> {
        let classes = [["common"], ["other"], [RARE]];
        let identity = LabelPartition::from_strs(&[&classes[0], &classes[1], &classes[2]]);
        vec![
            MachineSpec::new(
                SIGNAL_MACHINE,
                SIGNAL_VIEW,
                identity.clone(),
                MachineKind::Knn,
            ),
            MachineSpec::new(
                "signal-centroid",
                SIGNAL_VIEW,
                identity.clone(),
                MachineKind::NearestCentroid,
            ),
            MachineSpec::new(NOISE_MACHINE, NOISE_VIEW, identity, MachineKind::Knn),
        ]
    }
}

pub mod mirror {
    use super::*;

    pub const RARE: &str = "SOZ";
    /// The image-like view doubles as the raw baseline.
    pub const RAW_VIEW: &str = "img";
    pub const IMG: &str = "img";
    pub const D1: &str = "d1";
    pub const D2: &str = "d2";
    const DIM: usize = 4;
    const MARGIN: f64 = 6.0;

    /// RSN 90, noise 100, SOZ 6. `img` separates noise from the rest, `d1`
    /// separates SOZ from the rest, `d2` carries no label information.
    pub fn dataset(seed: u64) -> SyntheticSpec {
        let zero = vec![0.0; DIM];
        let informative = |name: &str, shifted: &str| ViewGenerator {
            name: name.to_string(),
            dim: DIM,
            kind: GeneratorKind::Informative {
                margin: MARGIN,
                scale: 1.0,
                means: ["RSN", "noise", RARE]
                    .iter()
                    .map(|&c| {
                        let m = if c == shifted {
                            axis(DIM, MARGIN)
                        } else {
                            zero.clone()
                        };
                        (c.to_string(), m)
                    })
                    .collect(),
            },
        };
        SyntheticSpec {
            classes: counts(&[("RSN", 90), ("noise", 100), (RARE, 6)]),
            rare_class: RARE.to_string(),
            views: vec![
                informative(IMG, "noise"),
                informative(D1, RARE),
                noise(D2, DIM),
            ],
            seed,
        }
    }

    /// Linear machines: `img` over {noise | RSN, SOZ}; `d1` and `d2` over
    /// {SOZ | RSN, noise} with SMOTE.
    pub fn specs(with_d1: bool, with_d2: bool) -> Vec<MachineSpec> {
        let rare_vs_rest = LabelPartition::from_strs(&[&[RARE], &["RSN", "noise"]]);
        let mut out = vec![MachineSpec::new(
            IMG,
            IMG,
            LabelPartition::from_strs(&[&["noise"], &["RSN", RARE]]),
            MachineKind::Linear,
        )];
        for (id, keep) in [(D1, with_d1), (D2, with_d2)] {
            if keep {
                out.push(
                    MachineSpec::new(id, id, rare_vs_rest.clone(), MachineKind::Linear)
                        .with_smote(SmoteConfig::default()),
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generate_synthetic;

    #[test]
    fn presets_generate_and_validate() {
        let ds = generate_synthetic(&planted::dataset(0)).unwrap();
        assert_eq!(ds.len(), 188);
        assert!(planted::dataset(0).rare_fraction() < 0.05);
        for s in planted::specs() {
            s.validate(ds.class_set(), &ds).unwrap();
        }
        let ds = generate_synthetic(&mirror::dataset(0)).unwrap();
        assert_eq!(ds.len(), 196);
        for s in mirror::specs(true, true) {
            s.validate(ds.class_set(), &ds).unwrap();
        }
        assert_eq!(mirror::specs(false, true).len(), 2);
    }
}
