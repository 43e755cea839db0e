use std::io::Write;
use std::path::{Path, PathBuf};

use log::info;
use serde::Serialize;
use storm_core::io::presets::{self, planted};
use storm_core::io::{
    format_real, generate_synthetic, load_csv, read_json, save_csv, to_json_string, write_json,
    SyntheticSpec,
};
use storm_core::oracle::{
    oracle_best_subset, oracle_entropy, oracle_gain, random_small_dataset, ORACLE_MAX_INSTANCES,
};
use storm_core::storm::{assess, cascade_predict_all, select_with, Assessment};
use storm_core::{
    class_entropy, entropy_imbalance_gain, evaluate, stratified_split, train, Cascade, Dataset,
    DensityConfig, Execution, MachineSpec, Metrics, Result, StormConfig, StormError,
};

use crate::config::RunConfig;
use crate::table::{fixed, Table};

fn load_specs(path: &Path) -> Result<Vec<MachineSpec>> {
    let specs: Vec<MachineSpec> = read_json(path)?;
    if specs.is_empty() {
        return Err(StormError::Config(format!(
            "{}: no machine specs",
            path.display()
        )));
    }
    Ok(specs)
}

fn load_cascade(path: &Path) -> Result<Cascade> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        StormError::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    Cascade::from_json(&text)
}

fn resolve_rare(dataset: Dataset, rare: Option<&str>) -> Result<Dataset> {
    match rare {
        Some(r) => dataset.with_rare_class(r),
        None => Ok(dataset),
    }
}

fn resolve_raw_view(dataset: &Dataset, raw_view: Option<&str>) -> Result<String> {
    match raw_view {
        Some(v) if dataset.has_view(v) => Ok(v.to_string()),
        Some(v) => Err(StormError::Config(format!(
            "raw view `{v}` is not in the dataset"
        ))),
        None => Ok(dataset.schema()[0].name.clone()),
    }
}

/// `cascade.json` → `cascade.report.json`.
pub fn report_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    out.with_file_name(format!("{stem}.report.json"))
}

pub struct AssessArgs<'a> {
    pub dataset: &'a Path,
    pub specs: &'a Path,
    pub raw_view: Option<&'a str>,
    pub rare_class: Option<&'a str>,
    pub config: Option<&'a Path>,
    pub k: Option<usize>,
    pub out: Option<&'a Path>,
}

#[derive(Serialize)]
struct AssessOutput<'a> {
    config: &'a RunConfig,
    raw_view: &'a str,
    rare_class: &'a str,
    assessment: &'a Assessment,
}

pub fn assess_cmd(a: &AssessArgs, out: &mut impl Write) -> Result<()> {
    let mut cfg = RunConfig::load(a.config, None)?;
    if let Some(k) = a.k {
        cfg.density.k = k;
        cfg.validate()?;
    }
    let data = resolve_rare(load_csv(a.dataset)?, a.rare_class)?;
    let raw_view = resolve_raw_view(&data, a.raw_view)?;
    let specs = load_specs(a.specs)?;
    let machines = specs
        .iter()
        .map(|s| train(s, &data))
        .collect::<Result<Vec<_>>>()?;
    let assessment = assess(
        &data,
        &machines,
        &raw_view,
        &cfg.density,
        cfg.storm.epsilon_m,
    )?;

    let classes: Vec<String> = assessment
        .raw
        .classes
        .iter()
        .map(|c| c.class.clone())
        .collect();
    let mut header = vec![
        "machine".to_string(),
        "view".into(),
        "EIG".into(),
        "eta".into(),
    ];
    header.extend(classes.iter().map(|c| format!("theta[{c}]")));
    header.push("tie".into());
    let mut table = Table::new(header);
    let mut push = |name: String, view: &str, eig: f64, report: &storm_core::EntropyReport, tie| {
        let mut row = vec![name, view.to_string(), fixed(eig), fixed(report.imbalance)];
        row.extend(
            classes
                .iter()
                .map(|c| report.entropy_of(c).map_or("-".into(), fixed)),
        );
        row.push(if tie { "*".into() } else { String::new() });
        table.row(row);
    };
    for r in &assessment.rows {
        push(r.machine.clone(), &r.view, r.eig, &r.report, r.tie);
    }
    // the raw view against itself: zero gain by definition
    let raw_gain = entropy_imbalance_gain(&assessment.raw, &assessment.raw)?;
    push(
        format!("(raw) {raw_view}"),
        &raw_view,
        raw_gain,
        &assessment.raw,
        false,
    );
    write!(out, "{}", table.render())?;

    if let Some(path) = a.out {
        write_json(
            path,
            &AssessOutput {
                config: &cfg,
                raw_view: &raw_view,
                rare_class: data.rare_class(),
                assessment: &assessment,
            },
        )?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

pub struct SelectArgs<'a> {
    pub dataset: &'a Path,
    pub specs: &'a Path,
    pub rare_class: Option<&'a str>,
    pub raw_view: Option<&'a str>,
    pub config: Option<&'a Path>,
    pub seed: Option<u64>,
    pub out: &'a Path,
}

pub fn select_cmd(a: &SelectArgs, exec: Execution, out: &mut impl Write) -> Result<()> {
    let cfg = RunConfig::load(a.config, a.seed)?;
    let data = resolve_rare(load_csv(a.dataset)?, a.rare_class)?;
    let rare = data.rare_class().to_string();
    let raw_view = resolve_raw_view(&data, a.raw_view)?;
    let specs = load_specs(a.specs)?;
    let split = stratified_split(&data, cfg.validation_fraction, cfg.seed)?;
    let cascade = select_with(
        &data,
        &split,
        &specs,
        &rare,
        &raw_view,
        &cfg.storm,
        &cfg.density,
        exec,
    )?;

    let mut table = Table::new([
        "round", "machine", "EIG", "block", "gini", "kept", "decision",
    ]);
    for (r, node) in cascade.report.rounds.iter().zip(&cascade.nodes) {
        table.row([
            r.index.to_string(),
            r.chosen.clone(),
            fixed(node.eig),
            r.selected_block.clone(),
            r.gini.map_or("-".into(), fixed),
            format!("{}/{}", r.kept, r.psi_size),
            format!("{:?}", r.decision).to_lowercase(),
        ]);
    }
    write!(out, "{}", table.render())?;
    writeln!(out, "stop: {:?}", cascade.report.stop_reason)?;
    for e in &cascade.report.excluded {
        writeln!(out, "excluded view {}: {}", e.view, e.reason)?;
    }
    writeln!(
        out,
        "validation F1: {}",
        fixed(cascade.report.validation.f1)
    )?;

    std::fs::write(a.out, to_json_string(&cascade)?)?;
    let report = report_path(a.out);
    std::fs::write(&report, to_json_string(&cascade.report)?)?;
    info!("wrote {} and {}", a.out.display(), report.display());
    Ok(())
}

pub fn predict_cmd(
    cascade: &Path,
    dataset: &Path,
    out_path: &Path,
    exec: Execution,
) -> Result<usize> {
    let cascade = load_cascade(cascade)?;
    let data = load_csv(dataset)?;
    let predictions = cascade_predict_all(&cascade, &data, exec)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(out_path)
        .map_err(|e| StormError::Csv(e.to_string()))?;
    let csv_err = |e: csv::Error| StormError::Csv(e.to_string());
    w.write_record(["id", "label", "score", "overridden", "coarse"])
        .map_err(csv_err)?;
    for (inst, p) in data.instances().iter().zip(&predictions) {
        w.write_record([
            inst.id.as_str(),
            p.label.as_str(),
            &format_real(p.score),
            if p.overridden { "true" } else { "false" },
            if p.coarse { "true" } else { "false" },
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(predictions.len())
}

#[derive(Serialize)]
struct EvaluateOutput<'a> {
    storm: &'a StormConfig,
    density: &'a DensityConfig,
    rare_class: &'a str,
    cascade: Vec<String>,
    metrics: &'a Metrics,
}

pub fn evaluate_cmd(
    cascade: &Path,
    dataset: &Path,
    json_out: Option<&Path>,
    out: &mut impl Write,
) -> Result<Metrics> {
    let cascade = load_cascade(cascade)?;
    let data = load_csv(dataset)?;
    let m = evaluate(&cascade, &data, &cascade.rare_class)?;
    let mut t = Table::new(["metric", "value"]);
    for (name, v) in [
        ("accuracy", m.accuracy),
        ("precision", m.precision),
        ("sensitivity", m.sensitivity),
        ("F1", m.f1),
    ] {
        t.row([name.to_string(), fixed(v)]);
    }
    for (name, v) in [
        ("TP", m.true_positives),
        ("FP", m.false_positives),
        ("FN", m.false_negatives),
        ("TN", m.true_negatives),
    ] {
        t.row([name.to_string(), v.to_string()]);
    }
    write!(out, "{}", t.render())?;
    if m.no_positive_predictions {
        writeln!(out, "note: nothing was predicted `{}`", cascade.rare_class)?;
    }
    if let Some(path) = json_out {
        let settings = &cascade.report.settings;
        write_json(
            path,
            &EvaluateOutput {
                storm: &settings.storm,
                density: &settings.density,
                rare_class: &cascade.rare_class,
                cascade: cascade.sequence(),
                metrics: &m,
            },
        )?;
    }
    Ok(m)
}

pub struct VerifyArgs {
    pub datasets: usize,
    pub max_n: usize,
    pub instances: usize,
    pub gap: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub datasets: usize,
    pub max_n: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub entropy_matches: usize,
    pub max_entropy_deviation: f64,
    pub instances: usize,
    pub gap_bound: f64,
    pub within_gap: usize,
    pub greedy_exceeded: usize,
    pub max_gap: f64,
}

impl VerifySummary {
    pub fn line(&self) -> String {
        format!(
            "entropy match: {}/{} within {:e}; greedy-vs-exhaustive gap <= {}: {}/{} (max gap {:.3}, greedy above exhaustive: {})",
            self.entropy_matches,
            self.datasets,
            self.tolerance,
            self.gap_bound,
            self.within_gap,
            self.instances,
            self.max_gap,
            self.greedy_exceeded
        )
    }
}

pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// Oracle comparison on random small datasets, then greedy selection against
/// exhaustive search on seeded planted instances.
pub fn verify(a: &VerifyArgs, exec: Execution) -> Result<VerifySummary> {
    if a.max_n > ORACLE_MAX_INSTANCES {
        return Err(StormError::OracleLimit(format!(
            "--max-n {} exceeds the oracle limit of {ORACLE_MAX_INSTANCES}",
            a.max_n
        )));
    }
    let density = DensityConfig::default();
    let mut matches = 0;
    let mut worst = 0.0f64;
    for i in 0..a.datasets {
        let ds = random_small_dataset(a.seed.wrapping_add(i as u64), a.max_n)?;
        let d = entropy_deviation(&ds, &density)?;
        worst = worst.max(d);
        if d <= VERIFY_TOLERANCE {
            matches += 1;
        }
    }

    let storm = StormConfig {
        max_depth: 3,
        ..StormConfig::default()
    };
    let specs = planted::specs();
    let (mut within, mut exceeded, mut max_gap) = (0, 0, 0.0f64);
    for i in 0..a.instances {
        let seed = a.seed.wrapping_add(i as u64);
        let ds = generate_synthetic(&planted::dataset(seed))?;
        let split = stratified_split(&ds, 0.3, seed)?;
        let c = select_with(
            &ds,
            &split,
            &specs,
            planted::RARE,
            planted::RAW_VIEW,
            &storm,
            &density,
            exec,
        )?;
        let best = oracle_best_subset(&ds, &split, &specs, planted::RARE, &storm, 3)?;
        let greedy = c.report.validation.f1;
        let gap = best.f1 - greedy;
        max_gap = max_gap.max(gap);
        if gap <= a.gap {
            within += 1;
        }
        if greedy > best.f1 {
            exceeded += 1;
        }
    }
    Ok(VerifySummary {
        datasets: a.datasets,
        max_n: a.max_n,
        seed: a.seed,
        tolerance: VERIFY_TOLERANCE,
        entropy_matches: matches,
        max_entropy_deviation: worst,
        instances: a.instances,
        gap_bound: a.gap,
        within_gap: within,
        greedy_exceeded: exceeded,
        max_gap,
    })
}

/// Largest absolute difference between the library and the oracle over
/// per-class θ, η, and the gain of one view-half representation.
pub fn entropy_deviation(ds: &Dataset, density: &DensityConfig) -> Result<f64> {
    use storm_core::entropy::ReportSource;
    let reps = ds.view_vectors("v")?;
    // a second representation: the first half of the coordinates, scaled
    let half: Vec<Vec<f64>> = reps
        .iter()
        .map(|r| r[..r.len().div_ceil(2)].iter().map(|x| 2.0 * x).collect())
        .collect();
    let raw = class_entropy(ds, &reps, density, ReportSource::Raw { view: "v".into() })?;
    let other = class_entropy(
        ds,
        &half,
        density,
        ReportSource::Machine { id: "half".into() },
    )?;
    let raw_o = oracle_entropy(ds, &reps, density)?;
    let other_o = oracle_entropy(ds, &half, density)?;
    let mut worst = 0.0f64;
    for (r, o) in [(&raw, &raw_o), (&other, &other_o)] {
        if r.classes.len() != o.classes.len() {
            return Ok(f64::INFINITY);
        }
        for c in &r.classes {
            let t = o.entropy_of(&c.class).unwrap_or(f64::INFINITY);
            worst = worst.max((c.entropy - t).abs());
        }
        worst = worst.max((r.imbalance - o.imbalance).abs());
    }
    let gain = entropy_imbalance_gain(&raw, &other)?;
    Ok(worst.max((gain - oracle_gain(&raw_o, &other_o)).abs()))
}

pub enum GenerateSource<'a> {
    Spec(&'a Path),
    Preset(&'a str),
}

pub fn generate_cmd(source: GenerateSource, seed: Option<u64>, out: &Path) -> Result<usize> {
    let mut spec: SyntheticSpec = match source {
        GenerateSource::Spec(p) => read_json(p)?,
        GenerateSource::Preset(name) => preset(name, seed.unwrap_or(0))?,
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    let ds = generate_synthetic(&spec)?;
    save_csv(&ds, out)?;
    Ok(ds.len())
}

pub const PRESETS: [&str; 3] = ["planted", "mirror", "mirror-test"];

fn preset(name: &str, seed: u64) -> Result<SyntheticSpec> {
    Ok(match name {
        "planted" => planted::dataset(seed),
        "mirror" => presets::mirror::dataset(seed),
        "mirror-test" => presets::mirror::dataset(seed + presets::TEST_SEED_OFFSET),
        other => {
            return Err(StormError::Config(format!(
                "unknown preset `{other}` (known: {})",
                PRESETS.join(", ")
            )))
        }
    })
}
