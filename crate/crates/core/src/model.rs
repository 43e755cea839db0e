//! Domain types: original classes, instances with named modality views,
//! datasets and coarsened label partitions.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, StormError};

/// The `m` original classes of a problem, one of which is designated rare.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginalClassSet {
    classes: Vec<String>,
    rare_class: String,
}

impl OriginalClassSet {
    pub fn new(classes: Vec<String>, rare_class: impl Into<String>) -> Result<Self> {
        let rare_class = rare_class.into();
        if classes.len() < 2 {
            return Err(StormError::ClassSet(format!(
                "need at least 2 classes, got {}",
                classes.len()
            )));
        }
        let mut seen = HashSet::new();
        for c in &classes {
            if !seen.insert(c.as_str()) {
                return Err(StormError::ClassSet(format!("duplicate class `{c}`")));
            }
        }
        if !seen.contains(rare_class.as_str()) {
            return Err(StormError::ClassSet(format!(
                "rare class `{rare_class}` is not one of the classes"
            )));
        }
        Ok(Self {
            classes,
            rare_class,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn rare_class(&self) -> &str {
        &self.rare_class
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn contains(&self, class: &str) -> bool {
        self.index_of(class).is_some()
    }

    /// Same classes with a different rare class.
    pub fn with_rare_class(&self, rare_class: &str) -> Result<Self> {
        Self::new(self.classes.clone(), rare_class)
    }
}

/// One labeled instance. Synthetic instances (from oversampling) may carry
/// only a subset of the dataset's views.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub label: String,
    pub views: BTreeMap<String, Vec<f64>>,
    pub synthetic: bool,
}

impl Instance {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
            views: BTreeMap::new(),
            synthetic: false,
        }
    }

    pub fn with_view(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.views.insert(name.into(), values);
        self
    }

    pub fn view(&self, name: &str) -> Result<&[f64]> {
        self.views
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| StormError::MissingView {
                instance: self.id.clone(),
                view: name.to_string(),
            })
    }
}

/// Name and column names of one modality view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewSchema {
    pub name: String,
    pub columns: Vec<String>,
}

impl ViewSchema {
    pub fn new(name: impl Into<String>, columns: Vec<String>) -> Self {
        Self {
            name: name.into(),
            columns,
        }
    }

    /// Columns named `0..dim`.
    pub fn with_dim(name: impl Into<String>, dim: usize) -> Self {
        Self::new(name, (0..dim).map(|i| i.to_string()).collect())
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }
}

/// Labeled instances over a fixed class set and view schema. Instance order
/// is preserved from construction and acts as the tie-break order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    class_set: OriginalClassSet,
    schema: Vec<ViewSchema>,
    instances: Vec<Instance>,
}

impl Dataset {
    /// Builds a dataset and checks every invariant, including that each class
    /// has at least one real instance.
    pub fn new(
        class_set: OriginalClassSet,
        schema: Vec<ViewSchema>,
        instances: Vec<Instance>,
    ) -> Result<Self> {
        let ds = Self {
            class_set,
            schema,
            instances,
        };
        ds.check(true)?;
        Ok(ds)
    }

    /// Like [`Dataset::new`] but allows classes without instances. Working
    /// subsets during selection are built this way.
    pub fn new_partial(
        class_set: OriginalClassSet,
        schema: Vec<ViewSchema>,
        instances: Vec<Instance>,
    ) -> Result<Self> {
        let ds = Self {
            class_set,
            schema,
            instances,
        };
        ds.check(false)?;
        Ok(ds)
    }

    fn check(&self, require_all_classes: bool) -> Result<()> {
        if self.schema.is_empty() {
            return Err(StormError::Dataset("at least one view is required".into()));
        }
        let mut names = HashSet::new();
        for v in &self.schema {
            if !names.insert(v.name.as_str()) {
                return Err(StormError::Dataset(format!("duplicate view `{}`", v.name)));
            }
            if v.dim() == 0 {
                return Err(StormError::Dataset(format!(
                    "view `{}` has no columns",
                    v.name
                )));
            }
        }
        let mut ids = HashSet::new();
        let mut per_class = vec![0usize; self.class_set.len()];
        for inst in &self.instances {
            if !ids.insert(inst.id.as_str()) {
                return Err(StormError::Dataset(format!("duplicate id `{}`", inst.id)));
            }
            let Some(ci) = self.class_set.index_of(&inst.label) else {
                return Err(StormError::Dataset(format!(
                    "instance `{}` has unknown label `{}`",
                    inst.id, inst.label
                )));
            };
            if !inst.synthetic {
                per_class[ci] += 1;
            }
            for (name, values) in &inst.views {
                let Some(schema) = self.schema.iter().find(|v| &v.name == name) else {
                    return Err(StormError::Dataset(format!(
                        "instance `{}` has undeclared view `{name}`",
                        inst.id
                    )));
                };
                if values.len() != schema.dim() {
                    return Err(StormError::Dataset(format!(
                        "instance `{}` view `{name}` has {} values, expected {}",
                        inst.id,
                        values.len(),
                        schema.dim()
                    )));
                }
                if let Some(pos) = values.iter().position(|x| !x.is_finite()) {
                    return Err(StormError::Dataset(format!(
                        "instance `{}` view `{name}` column {pos} is not finite",
                        inst.id
                    )));
                }
            }
            if !inst.synthetic && inst.views.len() != self.schema.len() {
                let missing = self
                    .schema
                    .iter()
                    .find(|v| !inst.views.contains_key(&v.name))
                    .map(|v| v.name.clone())
                    .unwrap_or_default();
                return Err(StormError::MissingView {
                    instance: inst.id.clone(),
                    view: missing,
                });
            }
        }
        if require_all_classes {
            if let Some(ci) = per_class.iter().position(|&c| c == 0) {
                return Err(StormError::Dataset(format!(
                    "class `{}` has no instances",
                    self.class_set.classes()[ci]
                )));
            }
        }
        Ok(())
    }

    pub fn class_set(&self) -> &OriginalClassSet {
        &self.class_set
    }

    pub fn schema(&self) -> &[ViewSchema] {
        &self.schema
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn rare_class(&self) -> &str {
        self.class_set.rare_class()
    }

    pub fn view_schema(&self, view: &str) -> Option<&ViewSchema> {
        self.schema.iter().find(|v| v.name == view)
    }

    pub fn has_view(&self, view: &str) -> bool {
        self.view_schema(view).is_some()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.instances.iter().position(|i| i.id == id)
    }

    /// Class index of every instance, in instance order.
    pub fn class_indices(&self) -> Vec<usize> {
        self.instances
            .iter()
            .map(|i| self.class_set.index_of(&i.label).expect("validated label"))
            .collect()
    }

    /// Real (non-synthetic) instance count per class, in class-set order.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_set.len()];
        for (inst, ci) in self.instances.iter().zip(self.class_indices()) {
            if !inst.synthetic {
                counts[ci] += 1;
            }
        }
        counts
    }

    /// Copies one view of every instance, in instance order.
    pub fn view_vectors(&self, view: &str) -> Result<Vec<Vec<f64>>> {
        self.instances
            .iter()
            .map(|i| i.view(view).map(<[f64]>::to_vec))
            .collect()
    }

    /// The instances at `indices` (in that order), keeping class set and schema.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            class_set: self.class_set.clone(),
            schema: self.schema.clone(),
            instances: indices.iter().map(|&i| self.instances[i].clone()).collect(),
        }
    }

    /// Drops synthetic instances.
    pub fn real_only(&self) -> Dataset {
        Dataset {
            class_set: self.class_set.clone(),
            schema: self.schema.clone(),
            instances: self
                .instances
                .iter()
                .filter(|i| !i.synthetic)
                .cloned()
                .collect(),
        }
    }

    /// Same instances with a different rare class.
    pub fn with_rare_class(mut self, rare_class: &str) -> Result<Dataset> {
        self.class_set = self.class_set.with_rare_class(rare_class)?;
        Ok(self)
    }

    pub(crate) fn push_synthetic(&mut self, inst: Instance) {
        debug_assert!(inst.synthetic);
        self.instances.push(inst);
    }
}

/// A coarsened label set: blocks of original classes. Block order is
/// significant, since predictions refer to blocks by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelPartition {
    blocks: Vec<Vec<String>>,
}

/// The first partition criterion a candidate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    EmptyBlock { block: usize },
    Overlap { class: String },
    NotExhaustive { missing: String },
    NotOriginalLabel { class: String },
}

impl fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyBlock { block } => write!(f, "block {block} is empty"),
            Self::Overlap { class } => {
                write!(
                    f,
                    "blocks are not mutually exclusive: `{class}` appears twice"
                )
            }
            Self::NotExhaustive { missing } => {
                write!(f, "blocks are not exhaustive: `{missing}` is uncovered")
            }
            Self::NotOriginalLabel { class } => {
                write!(f, "`{class}` is not an original class label")
            }
        }
    }
}

impl LabelPartition {
    pub fn new(blocks: Vec<Vec<String>>) -> Self {
        Self { blocks }
    }

    pub fn from_strs(blocks: &[&[&str]]) -> Self {
        Self::new(
            blocks
                .iter()
                .map(|b| b.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
    }

    /// One block per class.
    pub fn identity(class_set: &OriginalClassSet) -> Self {
        Self::new(
            class_set
                .classes()
                .iter()
                .map(|c| vec![c.clone()])
                .collect(),
        )
    }

    /// All classes in a single block.
    pub fn single_block(class_set: &OriginalClassSet) -> Self {
        Self::new(vec![class_set.classes().to_vec()])
    }

    /// `{rare}` against everything else.
    pub fn rare_vs_rest(class_set: &OriginalClassSet) -> Self {
        let rare = class_set.rare_class().to_string();
        let rest = class_set
            .classes()
            .iter()
            .filter(|c| **c != rare)
            .cloned()
            .collect();
        Self::new(vec![vec![rare], rest])
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `class`.
    pub fn block_of(&self, class: &str) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.iter().any(|c| c == class))
    }

    /// Index of the block that is exactly `{class}`.
    pub fn singleton_block(&self, class: &str) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.len() == 1 && b[0] == class)
    }

    pub fn block_label(&self, block: usize) -> String {
        format!("{{{}}}", self.blocks[block].join(","))
    }
}

/// Checks the three partition criteria (plus non-empty blocks) in order:
/// mutual exclusion, exhaustiveness, union of original labels.
pub fn validate_partition(
    partition: &LabelPartition,
    class_set: &OriginalClassSet,
) -> std::result::Result<(), PartitionViolation> {
    if let Some(block) = partition.blocks.iter().position(Vec::is_empty) {
        return Err(PartitionViolation::EmptyBlock { block });
    }
    let mut seen = BTreeSet::new();
    for class in partition.blocks.iter().flatten() {
        if !seen.insert(class.as_str()) {
            return Err(PartitionViolation::Overlap {
                class: class.clone(),
            });
        }
    }
    if let Some(missing) = class_set
        .classes()
        .iter()
        .find(|c| !seen.contains(c.as_str()))
    {
        return Err(PartitionViolation::NotExhaustive {
            missing: missing.clone(),
        });
    }
    if let Some(class) = seen.iter().find(|c| !class_set.contains(c)) {
        return Err(PartitionViolation::NotOriginalLabel {
            class: class.to_string(),
        });
    }
    Ok(())
}

/// Block index of every instance, in instance order.
pub fn coarsen_labels(dataset: &Dataset, partition: &LabelPartition) -> Result<Vec<usize>> {
    validate_partition(partition, dataset.class_set()).map_err(StormError::Partition)?;
    Ok(dataset
        .instances()
        .iter()
        .map(|i| partition.block_of(&i.label).expect("exhaustive partition"))
        .collect())
}
