//! Cascade routing with the rare-class override rule.
//!
//! An instance walks down the cascade while each machine assigns it to the
//! node's selected block. The first machine that assigns it elsewhere decides
//! its label, unless some machine further down predicts the rare class with a
//! score strictly above `override_score`, in which case the rare label wins.

use serde::{Deserialize, Serialize};

use super::metrics::Metrics;
use super::SelectionReport;
use crate::error::{Result, StormError};
use crate::machines::TrainedMachine;
use crate::model::{Dataset, Instance};
use crate::par::{self, Execution};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Stop,
    Recurse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeNode {
    pub machine: TrainedMachine,
    /// Block routed deeper: `{rare}` itself or the block containing it.
    pub selected_block: usize,
    pub decision: Decision,
    /// Gini impurity of the training instances assigned to the selected block.
    pub gini: Option<f64>,
    pub eig: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cascade {
    pub format_version: u32,
    pub rare_class: String,
    pub override_score: f64,
    pub nodes: Vec<CascadeNode>,
    pub report: SelectionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadePrediction {
    pub label: String,
    pub score: f64,
    /// Node whose machine decided the label.
    pub node: usize,
    pub overridden: bool,
    /// The label is the majority class of a multi-class block.
    pub coarse: bool,
}

fn block_label(machine: &TrainedMachine, block: usize) -> (String, bool) {
    let members = &machine.partition().blocks()[block];
    if members.len() == 1 {
        (members[0].clone(), false)
    } else {
        (machine.summary.block_majority[block].clone(), true)
    }
}

/// Routes one instance through `nodes`. Shared by the cascade and by the
/// selection loop, which scores partial cascades.
pub(crate) fn route(
    nodes: &[CascadeNode],
    rare_class: &str,
    override_score: f64,
    instance: &Instance,
) -> Result<CascadePrediction> {
    if nodes.is_empty() {
        return Err(StormError::Invariant("cascade has no nodes".into()));
    }
    for node in nodes {
        if instance.view(&node.machine.spec.view).is_err() {
            return Err(StormError::MachineViewMissing {
                machine: node.machine.id().to_string(),
                view: node.machine.spec.view.clone(),
            });
        }
    }
    let last = nodes.len() - 1;
    for (i, node) in nodes.iter().enumerate() {
        let p = node.machine.predict(instance)?;
        if p.block == node.selected_block && i < last {
            continue;
        }
        let (label, coarse) = block_label(&node.machine, p.block);
        let is_rare_block = node.machine.partition().singleton_block(rare_class) == Some(p.block);
        if !is_rare_block {
            for (j, down) in nodes.iter().enumerate().skip(i + 1) {
                let Some(rare_block) = down.machine.partition().singleton_block(rare_class) else {
                    continue;
                };
                let q = down.machine.predict(instance)?;
                if q.block == rare_block && q.score > override_score {
                    return Ok(CascadePrediction {
                        label: rare_class.to_string(),
                        score: q.score,
                        node: j,
                        overridden: true,
                        coarse: false,
                    });
                }
            }
        }
        return Ok(CascadePrediction {
            label,
            score: p.score,
            node: i,
            overridden: false,
            coarse,
        });
    }
    unreachable!("the last node always decides")
}

impl Cascade {
    pub fn depth(&self) -> usize {
        self.nodes.len()
    }

    /// Machine ids, root first.
    pub fn sequence(&self) -> Vec<String> {
        self.nodes
            .iter()
            .map(|n| n.machine.id().to_string())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Version {
            format_version: u32,
        }
        let v: Version = serde_json::from_str(json)?;
        if v.format_version != FORMAT_VERSION {
            return Err(StormError::FormatVersion {
                found: v.format_version,
                expected: FORMAT_VERSION,
            });
        }
        let cascade: Cascade = serde_json::from_str(json)?;
        if cascade.nodes.is_empty() {
            return Err(StormError::Config("cascade has no nodes".into()));
        }
        Ok(cascade)
    }
}

pub fn cascade_predict(cascade: &Cascade, instance: &Instance) -> Result<CascadePrediction> {
    route(
        &cascade.nodes,
        &cascade.rare_class,
        cascade.override_score,
        instance,
    )
}

pub fn cascade_predict_all(
    cascade: &Cascade,
    dataset: &Dataset,
    exec: Execution,
) -> Result<Vec<CascadePrediction>> {
    par::map_slice(exec, dataset.instances(), |i| cascade_predict(cascade, i))
        .into_iter()
        .collect()
}

pub(crate) fn metrics_for(
    nodes: &[CascadeNode],
    rare_class: &str,
    override_score: f64,
    data: &Dataset,
    exec: Execution,
) -> Result<Metrics> {
    if data.is_empty() {
        return Err(StormError::Empty("evaluation set is empty".into()));
    }
    let predictions: Vec<CascadePrediction> = par::map_slice(exec, data.instances(), |i| {
        route(nodes, rare_class, override_score, i)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let truth: Vec<bool> = data
        .instances()
        .iter()
        .map(|i| i.label == rare_class)
        .collect();
    let predicted: Vec<bool> = predictions.iter().map(|p| p.label == rare_class).collect();
    Ok(Metrics::from_flags(&truth, &predicted))
}

/// Rare-vs-rest metrics of the cascade on a labeled test set.
pub fn evaluate(cascade: &Cascade, test: &Dataset, rare_class: &str) -> Result<Metrics> {
    metrics_for(
        &cascade.nodes,
        rare_class,
        cascade.override_score,
        test,
        Execution::default(),
    )
}
