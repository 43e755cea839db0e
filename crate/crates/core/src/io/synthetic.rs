//! Seeded synthetic datasets with informative and pure-noise views.
//!
//! Informative views draw each class from an isotropic Gaussian around a
//! class-specific mean; noise views draw every class from the same Gaussian.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, StormError};
use crate::model::{Dataset, Instance, OriginalClassSet, ViewSchema};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Class-conditional means. Without explicit `means`, class `i` of a
    /// `dim`-dimensional view sits at `margin·(1 + i/dim)·e_{i mod dim}`.
    Informative {
        margin: f64,
        #[serde(default = "unit")]
        scale: f64,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        means: BTreeMap<String, Vec<f64>>,
    },
    /// Label-independent `N(0, scale²)` in every coordinate.
    Noise {
        #[serde(default = "unit")]
        scale: f64,
    },
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewGenerator {
    pub name: String,
    pub dim: usize,
    #[serde(flatten)]
    pub kind: GeneratorKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    /// Class sizes, in class order.
    pub classes: Vec<ClassCount>,
    pub rare_class: String,
    pub views: Vec<ViewGenerator>,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.count).sum()
    }

    pub fn rare_fraction(&self) -> f64 {
        let rare = self
            .classes
            .iter()
            .find(|c| c.name == self.rare_class)
            .map_or(0, |c| c.count);
        rare as f64 / self.total() as f64
    }
}

fn class_means(view: &ViewGenerator, classes: &[ClassCount]) -> Result<Vec<Vec<f64>>> {
    match &view.kind {
        GeneratorKind::Noise { .. } => Ok(vec![vec![0.0; view.dim]; classes.len()]),
        GeneratorKind::Informative { margin, means, .. } if means.is_empty() => Ok(classes
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let mut m = vec![0.0; view.dim];
                m[i % view.dim] = margin * (1.0 + (i / view.dim) as f64);
                m
            })
            .collect()),
        GeneratorKind::Informative { means, .. } => classes
            .iter()
            .map(|c| {
                let m = means.get(&c.name).ok_or_else(|| {
                    StormError::Config(format!(
                        "view `{}`: no mean given for class `{}`",
                        view.name, c.name
                    ))
                })?;
                if m.len() != view.dim {
                    return Err(StormError::Config(format!(
                        "view `{}`: mean of `{}` has {} values, expected {}",
                        view.name,
                        c.name,
                        m.len(),
                        view.dim
                    )));
                }
                Ok(m.clone())
            })
            .collect(),
    }
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Dataset> {
    if let Some(c) = spec.classes.iter().find(|c| c.count < 2) {
        return Err(StormError::Config(format!(
            "class `{}` needs at least 2 instances, got {}",
            c.name, c.count
        )));
    }
    if spec.views.is_empty() {
        return Err(StormError::Config("at least one view is required".into()));
    }
    let class_set = OriginalClassSet::new(
        spec.classes.iter().map(|c| c.name.clone()).collect(),
        spec.rare_class.clone(),
    )?;
    let mut noise = Vec::with_capacity(spec.views.len());
    let mut means = Vec::with_capacity(spec.views.len());
    for v in &spec.views {
        if v.dim == 0 {
            return Err(StormError::Config(format!("view `{}` has dim 0", v.name)));
        }
        let scale = match v.kind {
            GeneratorKind::Informative { scale, .. } | GeneratorKind::Noise { scale } => scale,
        };
        let normal = Normal::new(0.0, scale)
            .map_err(|_| StormError::Config(format!("view `{}`: invalid scale {scale}", v.name)))?;
        noise.push(normal);
        means.push(class_means(v, &spec.classes)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut instances = Vec::with_capacity(spec.total());
    for (ci, class) in spec.classes.iter().enumerate() {
        for j in 0..class.count {
            let mut inst = Instance::new(format!("{}-{j:04}", class.name), class.name.clone());
            for (vi, view) in spec.views.iter().enumerate() {
                let values = means[vi][ci]
                    .iter()
                    .map(|m| m + noise[vi].sample(&mut rng))
                    .collect();
                inst.views.insert(view.name.clone(), values);
            }
            instances.push(inst);
        }
    }
    let schema = spec
        .views
        .iter()
        .map(|v| ViewSchema::with_dim(v.name.clone(), v.dim))
        .collect();
    Dataset::new(class_set, schema, instances)
}
