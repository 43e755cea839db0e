//! Greedy, Gini-gated cascade construction.
//!
//! Each round trains every candidate machine on the working set Ψ, ranks
//! the candidates by entropy-imbalance gain against the raw view restricted to
//! Ψ, and appends the winner to the cascade. If the winner has a block that
//! is exactly the rare class, the Gini impurity of the training instances it
//! routes there decides between stopping and refining; otherwise the block
//! containing the rare class becomes the next Ψ.

mod cascade;
mod metrics;

use std::collections::{BTreeMap, BTreeSet};

use log::{debug, info, warn};
use serde::{Deserialize, Serialize};

pub(crate) use cascade::metrics_for;
pub use cascade::{
    cascade_predict, cascade_predict_all, evaluate, Cascade, CascadeNode, CascadePrediction,
    Decision, FORMAT_VERSION,
};
pub use metrics::Metrics;

use crate::entropy::{
    class_entropy_with, entropy_imbalance_gain, DensityConfig, EntropyReport, ReportSource,
};
use crate::error::{Result, StormError};
use crate::machines::{train, MachineSpec, TrainedMachine};
use crate::model::Dataset;
use crate::par::{self, Execution};
use crate::purity::gini_index;
use crate::split::Split;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StormConfig {
    /// Candidates whose gains differ by less than this are tied (bits).
    pub epsilon_m: f64,
    /// Gini impurity below which a pure rare block stops the search.
    pub epsilon_g: f64,
    /// Confidence a tied candidate needs to be preferred.
    pub d_th: f64,
    /// Rounds of unchanged validation accuracy before stopping.
    pub patience: usize,
    /// Smallest validation-accuracy change that counts as a change.
    pub accuracy_delta: f64,
    pub max_depth: usize,
    /// Downstream rare score that overrides an upstream non-rare label.
    pub override_score: f64,
}

impl Default for StormConfig {
    fn default() -> Self {
        Self {
            epsilon_m: 0.01,
            epsilon_g: 0.2,
            d_th: 0.7,
            patience: 2,
            accuracy_delta: 0.001,
            max_depth: 8,
            override_score: 0.9,
        }
    }
}

impl StormConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(StormError::Config(msg));
        if !(self.epsilon_m > 0.0 && self.epsilon_m.is_finite()) {
            return bad(format!("epsilon_m must be > 0, got {}", self.epsilon_m));
        }
        if !(self.epsilon_g > 0.0 && self.epsilon_g < 1.0) {
            return bad(format!(
                "epsilon_g must be in (0, 1), got {}",
                self.epsilon_g
            ));
        }
        if !(self.d_th > 0.0 && self.d_th < 1.0) {
            return bad(format!("d_th must be in (0, 1), got {}", self.d_th));
        }
        if self.patience == 0 {
            return bad("patience must be at least 1".into());
        }
        if !(self.accuracy_delta >= 0.0 && self.accuracy_delta.is_finite()) {
            return bad(format!(
                "accuracy_delta must be >= 0, got {}",
                self.accuracy_delta
            ));
        }
        if self.max_depth == 0 {
            return bad("max_depth must be at least 1".into());
        }
        // values >= 1 disable overrides
        if !(self.override_score > 0.0 && self.override_score.is_finite()) {
            return bad(format!(
                "override_score must be > 0, got {}",
                self.override_score
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentRow {
    pub machine: String,
    pub view: String,
    pub report: EntropyReport,
    pub eig: f64,
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assessment {
    pub format_version: u32,
    pub density: DensityConfig,
    pub epsilon_m: f64,
    pub raw: EntropyReport,
    /// Sorted by gain, highest first; ties by machine id.
    pub rows: Vec<AssessmentRow>,
}

/// Entropy reports for the raw view and every machine's representation, with
/// each machine's gain over the raw view.
pub fn assess(
    dataset: &Dataset,
    machines: &[TrainedMachine],
    raw_view: &str,
    config: &DensityConfig,
    epsilon_m: f64,
) -> Result<Assessment> {
    assess_with(
        dataset,
        machines,
        raw_view,
        config,
        epsilon_m,
        Execution::default(),
    )
}

pub fn assess_with(
    dataset: &Dataset,
    machines: &[TrainedMachine],
    raw_view: &str,
    config: &DensityConfig,
    epsilon_m: f64,
    exec: Execution,
) -> Result<Assessment> {
    config.validate()?;
    let data = dataset.real_only();
    let raw_reps = data.view_vectors(raw_view)?;
    let raw = class_entropy_with(
        &data,
        &raw_reps,
        config,
        ReportSource::Raw {
            view: raw_view.to_string(),
        },
        exec,
    )?;
    let mut rows = Vec::with_capacity(machines.len());
    for m in machines {
        let reps = m.represent_all(&data, exec)?;
        let report = class_entropy_with(
            &data,
            &reps,
            config,
            ReportSource::Machine {
                id: m.id().to_string(),
            },
            exec,
        )?;
        let eig = entropy_imbalance_gain(&raw, &report)?;
        rows.push(AssessmentRow {
            machine: m.id().to_string(),
            view: m.spec.view.clone(),
            report,
            eig,
            tie: false,
        });
    }
    rows.sort_by(|a, b| {
        b.eig
            .total_cmp(&a.eig)
            .then_with(|| a.machine.cmp(&b.machine))
    });
    if let Some(best) = rows.first().map(|r| r.eig) {
        let within: Vec<bool> = rows.iter().map(|r| best - r.eig < epsilon_m).collect();
        if within.iter().filter(|&&w| w).count() > 1 {
            for (r, w) in rows.iter_mut().zip(within) {
                r.tie = w;
            }
        }
    }
    Ok(Assessment {
        format_version: FORMAT_VERSION,
        density: *config,
        epsilon_m,
        raw,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub machine: String,
    pub view: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imbalance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig: Option<f64>,
    pub tie: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<f64>,
    /// Why the candidate could not be evaluated this round.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub index: usize,
    pub psi_size: usize,
    pub psi_rare: usize,
    pub raw_imbalance: f64,
    pub candidates: Vec<CandidateRow>,
    pub chosen: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<String>,
    pub selected_block: String,
    pub gini: Option<f64>,
    pub decision: Decision,
    /// Training instances routed to the selected block (the next Ψ).
    pub kept: usize,
    pub routed_away: usize,
    /// Ids of rare-class training instances routed out of Ψ this round.
    pub rare_routed_away: Vec<String>,
    pub validation_accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The rare block is pure enough.
    RareBlockPure,
    /// Nothing was routed to the selected block.
    Exhausted,
    /// Ψ no longer holds rare-class instances.
    RareLost,
    /// Validation accuracy stopped changing.
    Plateau,
    MaxDepth,
    /// The chosen machine kept every instance of Ψ.
    NoProgress,
    /// No candidate could be trained on Ψ.
    NoTrainableCandidate,
    /// Built from given nodes by [`assemble_cascade`], not by selection.
    Assembled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub view: String,
    pub machines: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionSettings {
    pub storm: StormConfig,
    pub density: DensityConfig,
    pub raw_view: String,
    pub rare_class: String,
    pub train_size: usize,
    pub validation_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub format_version: u32,
    pub settings: SelectionSettings,
    pub rounds: Vec<Round>,
    pub chosen: Vec<String>,
    pub stop_reason: StopReason,
    pub warnings: Vec<String>,
    pub excluded: Vec<Exclusion>,
    pub validation: Metrics,
}

impl SelectionReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub const REASON_BELOW_RAW: &str = "EIG below raw baseline";
pub const REASON_OUTRANKED: &str = "lower EIG than the selected machine";
pub const REASON_UNTRAINABLE: &str = "not trainable on the working set";

/// Where a machine sends Ψ: the block routed deeper and the instances in it.
pub(crate) struct Routing {
    pub selected_block: usize,
    pub rare_singleton: bool,
    /// Dataset indices (into the full dataset) kept in Ψ.
    pub assigned: Vec<usize>,
    pub gini: Option<f64>,
}

pub(crate) fn route_working_set(
    machine: &TrainedMachine,
    psi_data: &Dataset,
    psi: &[usize],
    rare_class: &str,
    exec: Execution,
) -> Result<Routing> {
    let partition = machine.partition();
    let singleton = partition.singleton_block(rare_class);
    let selected_block = singleton
        .or_else(|| partition.block_of(rare_class))
        .ok_or_else(|| {
            StormError::Invariant(format!(
                "no block of machine `{}` contains `{rare_class}`",
                machine.id()
            ))
        })?;
    let predictions = machine.predict_all(psi_data, exec)?;
    let assigned: Vec<usize> = predictions
        .iter()
        .zip(psi)
        .filter(|(p, _)| p.block == selected_block)
        .map(|(_, &i)| i)
        .collect();
    let gini = if assigned.is_empty() {
        None
    } else {
        let labels = predictions
            .iter()
            .zip(psi_data.instances())
            .filter(|(p, _)| p.block == selected_block)
            .map(|(_, inst)| inst.label.as_str());
        Some(gini_index(labels)?.gini)
    };
    Ok(Routing {
        selected_block,
        rare_singleton: singleton.is_some(),
        assigned,
        gini,
    })
}

struct Evaluated {
    machine: TrainedMachine,
    report: EntropyReport,
    eig: f64,
}

fn evaluate_candidate(
    spec: &MachineSpec,
    psi_data: &Dataset,
    raw: &EntropyReport,
    density: &DensityConfig,
    exec: Execution,
) -> Result<Evaluated> {
    let machine = train(spec, psi_data)?;
    let reps = machine.represent_all(psi_data, exec)?;
    let report = class_entropy_with(
        psi_data,
        &reps,
        density,
        ReportSource::Machine {
            id: spec.id.clone(),
        },
        exec,
    )?;
    let eig = entropy_imbalance_gain(raw, &report)?;
    Ok(Evaluated {
        machine,
        report,
        eig,
    })
}

pub(crate) fn check_inputs(
    dataset: &Dataset,
    split: &Split,
    specs: &[MachineSpec],
    rare_class: &str,
    raw_view: Option<&str>,
    storm: &StormConfig,
    density: &DensityConfig,
) -> Result<Dataset> {
    storm.validate()?;
    density.validate()?;
    let data = dataset.clone().with_rare_class(rare_class)?;
    split.check(&data)?;
    if specs.is_empty() {
        return Err(StormError::Config(
            "at least one machine spec is required".into(),
        ));
    }
    let mut ids = BTreeSet::new();
    for spec in specs {
        if !ids.insert(spec.id.as_str()) {
            return Err(StormError::Config(format!(
                "duplicate machine id `{}`",
                spec.id
            )));
        }
        spec.validate(data.class_set(), &data)?;
    }
    if let Some(view) = raw_view {
        if !data.has_view(view) {
            return Err(StormError::Config(format!(
                "raw view `{view}` is not in the dataset"
            )));
        }
    }
    Ok(data)
}

/// Builds the cascade greedily. See the module docs for the loop.
pub fn select(
    dataset: &Dataset,
    split: &Split,
    specs: &[MachineSpec],
    rare_class: &str,
    raw_view: &str,
    storm: &StormConfig,
    density: &DensityConfig,
) -> Result<Cascade> {
    select_with(
        dataset,
        split,
        specs,
        rare_class,
        raw_view,
        storm,
        density,
        Execution::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn select_with(
    dataset: &Dataset,
    split: &Split,
    specs: &[MachineSpec],
    rare_class: &str,
    raw_view: &str,
    storm: &StormConfig,
    density: &DensityConfig,
    exec: Execution,
) -> Result<Cascade> {
    let data = check_inputs(
        dataset,
        split,
        specs,
        rare_class,
        Some(raw_view),
        storm,
        density,
    )?;
    let validation = data.subset(&split.validation);
    let is_rare = |i: usize| data.instances()[i].label == rare_class;

    let mut psi: Vec<usize> = split
        .train
        .iter()
        .copied()
        .filter(|&i| !data.instances()[i].synthetic)
        .collect();
    let mut nodes: Vec<CascadeNode> = Vec::new();
    let mut rounds: Vec<Round> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    let mut eig_history: BTreeMap<&str, Vec<f64>> = BTreeMap::new();

    // accuracy of predicting nothing rare
    let mut prev_accuracy = validation
        .instances()
        .iter()
        .filter(|i| i.label != rare_class)
        .count() as f64
        / validation.len() as f64;
    let mut unchanged = 0usize;

    let stop_reason = loop {
        let round = nodes.len();
        if psi.is_empty() {
            break StopReason::Exhausted;
        }
        let psi_data = data.subset(&psi);
        let psi_rare = psi.iter().filter(|&&i| is_rare(i)).count();
        if psi_rare == 0 {
            let msg = format!("round {round}: working set has no `{rare_class}` instances");
            warn!("{msg}");
            warnings.push(msg);
            break StopReason::RareLost;
        }

        let raw_reps = psi_data.view_vectors(raw_view)?;
        let raw = class_entropy_with(
            &psi_data,
            &raw_reps,
            density,
            ReportSource::Raw {
                view: raw_view.to_string(),
            },
            exec,
        )?;
        let evaluated = par::map_slice(exec, specs, |spec| {
            evaluate_candidate(spec, &psi_data, &raw, density, exec)
        });

        let mut rows: Vec<CandidateRow> = Vec::with_capacity(specs.len());
        let mut valid: Vec<(usize, Evaluated)> = Vec::new();
        for (idx, (spec, result)) in specs.iter().zip(evaluated).enumerate() {
            let mut row = CandidateRow {
                machine: spec.id.clone(),
                view: spec.view.clone(),
                imbalance: None,
                eig: None,
                tie: false,
                confidence: None,
                error: None,
            };
            match result {
                Ok(ev) => {
                    row.imbalance = Some(ev.report.imbalance);
                    row.eig = Some(ev.eig);
                    eig_history
                        .entry(spec.id.as_str())
                        .or_default()
                        .push(ev.eig);
                    valid.push((idx, ev));
                }
                Err(e) if e.is_internal() => return Err(e),
                Err(e) => {
                    debug!("round {round}: candidate `{}` skipped: {e}", spec.id);
                    row.error = Some(e.to_string());
                }
            }
            rows.push(row);
        }
        if valid.is_empty() {
            if nodes.is_empty() {
                return Err(StormError::Training {
                    machine: "*".into(),
                    reason: "no candidate machine could be trained on the training split".into(),
                });
            }
            let msg = format!("round {round}: no candidate could be trained on Ψ");
            warn!("{msg}");
            warnings.push(msg);
            break StopReason::NoTrainableCandidate;
        }

        let best = valid
            .iter()
            .map(|(_, e)| e.eig)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut tied: Vec<usize> = (0..valid.len())
            .filter(|&k| best - valid[k].1.eig < storm.epsilon_m)
            .collect();
        let mut tie_break = None;
        let chosen_pos = if tied.len() == 1 {
            tied[0]
        } else {
            // confidence on the validation instances that reach this depth
            let reaching: Vec<usize> = (0..validation.len())
                .filter(|&v| {
                    nodes.iter().all(|n| {
                        n.machine
                            .predict(&validation.instances()[v])
                            .map(|p| p.block == n.selected_block)
                            .unwrap_or(false)
                    })
                })
                .collect();
            let (basis_name, basis) = if reaching.is_empty() {
                ("training Ψ", psi_data.clone())
            } else {
                ("validation", validation.subset(&reaching))
            };
            let mut conf = BTreeMap::new();
            for &k in &tied {
                let c = valid[k].1.machine.confidence(&basis)?;
                conf.insert(k, c);
                rows[valid[k].0].tie = true;
                rows[valid[k].0].confidence = Some(c);
            }
            tied.sort_by(|&a, &b| {
                let (ca, cb) = (conf[&a], conf[&b]);
                let (above_a, above_b) = (ca > storm.d_th, cb > storm.d_th);
                above_b
                    .cmp(&above_a)
                    .then_with(|| {
                        if above_a && above_b {
                            cb.total_cmp(&ca)
                        } else {
                            std::cmp::Ordering::Equal
                        }
                    })
                    .then_with(|| valid[b].1.eig.total_cmp(&valid[a].1.eig))
                    .then_with(|| specs[valid[a].0].id.cmp(&specs[valid[b].0].id))
            });
            let winner = tied[0];
            let names: Vec<&str> = tied
                .iter()
                .map(|&k| specs[valid[k].0].id.as_str())
                .collect();
            tie_break = Some(format!(
                "tie within epsilon_m among [{}]; chose `{}` (confidence {:.4} on {basis_name}, d_th {})",
                names.join(", "),
                specs[valid[winner].0].id,
                conf[&winner],
                storm.d_th
            ));
            winner
        };

        let (spec_idx, chosen) = valid.swap_remove(chosen_pos);
        let routing = route_working_set(&chosen.machine, &psi_data, &psi, rare_class, exec)?;
        let kept: BTreeSet<usize> = routing.assigned.iter().copied().collect();
        let rare_routed_away: Vec<String> = psi
            .iter()
            .filter(|i| !kept.contains(i) && is_rare(**i))
            .map(|&i| data.instances()[i].id.clone())
            .collect();
        let routed_away = psi.len() - routing.assigned.len();
        if !rare_routed_away.is_empty() {
            debug!(
                "round {round}: {} rare instances routed away: {:?}",
                rare_routed_away.len(),
                rare_routed_away
            );
        }

        let mut machine = chosen.machine;
        machine.summary.validation_accuracy = Some(machine.block_accuracy(&validation)?);
        let selected_label = machine.partition().block_label(routing.selected_block);
        nodes.push(CascadeNode {
            machine,
            selected_block: routing.selected_block,
            decision: Decision::Recurse,
            gini: routing.gini,
            eig: chosen.eig,
        });

        let accuracy =
            metrics_for(&nodes, rare_class, storm.override_score, &validation, exec)?.accuracy;
        if (accuracy - prev_accuracy).abs() < storm.accuracy_delta {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        prev_accuracy = accuracy;

        let stop = if routing.rare_singleton && routing.gini.is_some_and(|g| g < storm.epsilon_g) {
            Some(StopReason::RareBlockPure)
        } else if routing.assigned.is_empty() {
            Some(StopReason::Exhausted)
        } else if unchanged >= storm.patience {
            Some(StopReason::Plateau)
        } else if nodes.len() >= storm.max_depth {
            Some(StopReason::MaxDepth)
        } else if routing.assigned.len() == psi.len() {
            Some(StopReason::NoProgress)
        } else if !routing.assigned.iter().any(|&i| is_rare(i)) {
            let msg = format!("round {round}: every `{rare_class}` instance was routed out of Ψ");
            warn!("{msg}");
            warnings.push(msg);
            Some(StopReason::RareLost)
        } else {
            None
        };
        let decision = if stop.is_some() {
            Decision::Stop
        } else {
            Decision::Recurse
        };
        nodes.last_mut().expect("just pushed").decision = decision;
        info!(
            "round {round}: chose `{}` (EIG {:.4}), block {selected_label}, |Ψ| {} -> {}, {:?}",
            specs[spec_idx].id,
            chosen.eig,
            psi.len(),
            routing.assigned.len(),
            decision
        );
        rounds.push(Round {
            index: round,
            psi_size: psi.len(),
            psi_rare,
            raw_imbalance: raw.imbalance,
            candidates: rows,
            chosen: specs[spec_idx].id.clone(),
            tie_break,
            selected_block: selected_label,
            gini: routing.gini,
            decision,
            kept: routing.assigned.len(),
            routed_away,
            rare_routed_away,
            validation_accuracy: accuracy,
        });
        if let Some(reason) = stop {
            break reason;
        }
        psi = routing.assigned;
    };

    let chosen: Vec<String> = nodes.iter().map(|n| n.machine.id().to_string()).collect();
    let used_views: BTreeSet<&str> = nodes.iter().map(|n| n.machine.spec.view.as_str()).collect();
    let mut by_view: BTreeMap<&str, Vec<&MachineSpec>> = BTreeMap::new();
    for spec in specs {
        if !used_views.contains(spec.view.as_str()) {
            by_view.entry(spec.view.as_str()).or_default().push(spec);
        }
    }
    let excluded = by_view
        .into_iter()
        .map(|(view, view_specs)| {
            let gains: Vec<f64> = view_specs
                .iter()
                .flat_map(|s| eig_history.get(s.id.as_str()).cloned().unwrap_or_default())
                .collect();
            let reason = if gains.is_empty() {
                REASON_UNTRAINABLE
            } else if gains.iter().all(|&g| g < 0.0) {
                REASON_BELOW_RAW
            } else {
                REASON_OUTRANKED
            };
            Exclusion {
                view: view.to_string(),
                machines: view_specs.iter().map(|s| s.id.clone()).collect(),
                reason: reason.to_string(),
            }
        })
        .collect();

    let validation_metrics =
        metrics_for(&nodes, rare_class, storm.override_score, &validation, exec)?;
    let report = SelectionReport {
        format_version: FORMAT_VERSION,
        settings: SelectionSettings {
            storm: storm.clone(),
            density: *density,
            raw_view: raw_view.to_string(),
            rare_class: rare_class.to_string(),
            train_size: split.train.len(),
            validation_size: split.validation.len(),
            validation_fraction: split.validation_fraction,
            split_seed: split.seed,
        },
        rounds,
        chosen,
        stop_reason,
        warnings,
        excluded,
        validation: validation_metrics,
    };
    Ok(Cascade {
        format_version: FORMAT_VERSION,
        rare_class: rare_class.to_string(),
        override_score: storm.override_score,
        nodes,
        report,
    })
}

/// Wraps already-trained nodes into a cascade without running selection, for
/// machines chosen by hand. The report lists the nodes and no rounds.
pub fn assemble_cascade(
    nodes: Vec<CascadeNode>,
    rare_class: &str,
    raw_view: &str,
    storm: &StormConfig,
    density: &DensityConfig,
) -> Result<Cascade> {
    storm.validate()?;
    if nodes.is_empty() {
        return Err(StormError::Config("cascade has no nodes".into()));
    }
    for node in &nodes {
        let partition = node.machine.partition();
        if partition.block_of(rare_class) != Some(node.selected_block) {
            return Err(StormError::Config(format!(
                "node `{}`: selected block {} does not contain `{rare_class}`",
                node.machine.id(),
                node.selected_block
            )));
        }
    }
    let chosen = nodes.iter().map(|n| n.machine.id().to_string()).collect();
    Ok(Cascade {
        format_version: FORMAT_VERSION,
        rare_class: rare_class.to_string(),
        override_score: storm.override_score,
        nodes,
        report: SelectionReport {
            format_version: FORMAT_VERSION,
            settings: SelectionSettings {
                storm: storm.clone(),
                density: *density,
                raw_view: raw_view.to_string(),
                rare_class: rare_class.to_string(),
                train_size: 0,
                validation_size: 0,
                validation_fraction: None,
                split_seed: None,
            },
            rounds: Vec::new(),
            chosen,
            stop_reason: StopReason::Assembled,
            warnings: Vec::new(),
            excluded: Vec::new(),
            validation: Metrics::from_counts(0, 0, 0, 0),
        },
    })
}
