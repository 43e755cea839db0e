//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits non-zero on any FAIL only with `--strict` or `STORM_ACCEPTANCE_STRICT=1`;
//! under plain `cargo test` it reports and exits zero so known-red criteria
//! stay visible without masking unit-test failures.

use std::f64::consts::TAU;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use storm_core::entropy::{density_profile, ReportSource};
use storm_core::io::presets::{mirror, planted, TEST_SEED_OFFSET};
use storm_core::io::{format_real, generate_synthetic, save_csv, write_json};
use storm_core::oracle::{oracle_best_subset, oracle_entropy, oracle_gain, random_small_dataset};
use storm_core::resample::{smote_oversample_traced, SmoteConfig};
use storm_core::storm::{CascadeNode, Decision, StopReason};
use storm_core::{
    assemble_cascade, class_entropy, entropy_imbalance_gain, euclidean_distance, evaluate, select,
    stratified_split, train, Cascade, Dataset, DensityConfig, Execution, Instance, LabelPartition,
    MachineKind, MachineSpec, OriginalClassSet, Split, StormConfig, ViewSchema,
};

const SEEDS: std::ops::Range<u64> = 0..20;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn storm_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_storm"))
}

fn raw(view: &str) -> ReportSource {
    ReportSource::Raw { view: view.into() }
}

// 1

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cfg = DensityConfig::default();
    let mut matched = 0;
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let ds = random_small_dataset(seed, 50).unwrap();
        let reps = ds.view_vectors("v").unwrap();
        let spec = MachineSpec::new(
            "m",
            "v",
            LabelPartition::identity(ds.class_set()),
            MachineKind::NearestCentroid,
        );
        let m = train(&spec, &ds).unwrap();
        let mreps = m.represent_all(&ds, Execution::default()).unwrap();
        let a = class_entropy(&ds, &reps, &cfg, raw("v")).unwrap();
        let b = class_entropy(&ds, &mreps, &cfg, ReportSource::Machine { id: "m".into() }).unwrap();
        let (ao, bo) = (
            oracle_entropy(&ds, &reps, &cfg).unwrap(),
            oracle_entropy(&ds, &mreps, &cfg).unwrap(),
        );
        let mut d = 0.0f64;
        for (r, o) in [(&a, &ao), (&b, &bo)] {
            for c in &r.classes {
                d = d.max((c.entropy - o.entropy_of(&c.class).unwrap()).abs());
            }
            d = d.max((r.imbalance - o.imbalance).abs());
        }
        d = d.max((entropy_imbalance_gain(&a, &b).unwrap() - oracle_gain(&ao, &bo)).abs());
        worst = worst.max(d);
        if d <= 1e-9 {
            matched += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        matched == 100 && t < Duration::from_secs(10),
        format!(
            "{matched}/100 within 1e-9, max deviation {worst:.1e}, {:.2}s",
            t.as_secs_f64()
        ),
    )
}

// 2

fn polygon(n: usize, radius: f64, phase: f64, offset: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let a = phase + TAU * i as f64 / n as f64;
            vec![offset + radius * a.cos(), offset + radius * a.sin()]
        })
        .collect()
}

fn entropy_bounds() -> Outcome {
    let cfg = DensityConfig::default();
    let (mut classes, mut bad_bound, mut bad_norm) = (0, 0, 0);
    for seed in 0..100 {
        let ds = random_small_dataset(seed, 50).unwrap();
        let reps = ds.view_vectors("v").unwrap();
        let r = class_entropy(&ds, &reps, &cfg, raw("v")).unwrap();
        for c in &r.classes {
            classes += 1;
            if !(c.entropy >= 0.0 && c.entropy <= (c.size as f64).log2() + 1e-9) {
                bad_bound += 1;
            }
        }
        let p = density_profile(&ds, &reps, &cfg, Execution::default()).unwrap();
        for class in ds.class_set().classes() {
            let s: f64 = ds
                .instances()
                .iter()
                .zip(&p.gamma)
                .filter(|(i, _)| &i.label == class)
                .map(|(_, g)| g)
                .sum();
            if (s - 1.0).abs() > 1e-9 {
                bad_norm += 1;
            }
        }
    }
    // regular polygons: every vertex has the same two nearest neighbours' distance
    let mut uniform_worst = 0.0f64;
    for n in 3..=16 {
        let cs = OriginalClassSet::new(vec!["ring".into(), "other".into()], "other").unwrap();
        let mut insts: Vec<Instance> = polygon(n, 0.5 + n as f64, 0.1 * n as f64, 0.0)
            .into_iter()
            .enumerate()
            .map(|(i, x)| Instance::new(format!("r{i}"), "ring").with_view("v", x))
            .collect();
        for (i, x) in polygon(5, 1.0, 0.0, 100.0).into_iter().enumerate() {
            insts.push(Instance::new(format!("o{i}"), "other").with_view("v", x));
        }
        let ds = Dataset::new(cs, vec![ViewSchema::with_dim("v", 2)], insts).unwrap();
        let r = class_entropy(
            &ds,
            &ds.view_vectors("v").unwrap(),
            &DensityConfig::new(2),
            raw("v"),
        )
        .unwrap();
        uniform_worst =
            uniform_worst.max((r.entropy_of("ring").unwrap() - (n as f64).log2()).abs());
        uniform_worst = uniform_worst.max((r.entropy_of("other").unwrap() - 5f64.log2()).abs());
    }
    outcome(
        bad_bound == 0 && bad_norm == 0 && uniform_worst <= 1e-6,
        format!(
            "{classes} classes, {bad_bound} out of bounds, {bad_norm} unnormalized; uniform classes off the bound by {uniform_worst:.1e}"
        ),
    )
}

// 3

fn scaled(ds: &Dataset, s: f64) -> Dataset {
    let insts = ds
        .instances()
        .iter()
        .map(|i| {
            let mut j = i.clone();
            for v in j.views.values_mut() {
                v.iter_mut().for_each(|x| *x *= s);
            }
            j
        })
        .collect();
    Dataset::new(ds.class_set().clone(), ds.schema().to_vec(), insts).unwrap()
}

/// θ per class, η, and the gain ranking of three machines.
fn scale_signature(ds: &Dataset) -> (Vec<f64>, f64, Vec<String>) {
    let cfg = DensityConfig::default();
    let base = class_entropy(ds, &ds.view_vectors("v").unwrap(), &cfg, raw("v")).unwrap();
    let partition = LabelPartition::identity(ds.class_set());
    let mut gains: Vec<(String, f64)> = [
        ("centroid", MachineKind::NearestCentroid),
        ("knn", MachineKind::Knn),
        ("knn3", MachineKind::Knn),
    ]
    .into_iter()
    .map(|(id, kind)| {
        let mut spec = MachineSpec::new(id, "v", partition.clone(), kind);
        if id == "knn3" {
            spec = spec.with_hyperparameter("k", 3.0);
        }
        let m = train(&spec, ds).unwrap();
        let reps = m.represent_all(ds, Execution::default()).unwrap();
        let r = class_entropy(ds, &reps, &cfg, ReportSource::Machine { id: id.into() }).unwrap();
        (id.to_string(), entropy_imbalance_gain(&base, &r).unwrap())
    })
    .collect();
    gains.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    (
        base.entropies(),
        base.imbalance,
        gains.into_iter().map(|g| g.0).collect(),
    )
}

fn scale_invariance() -> Outcome {
    let (mut worst, mut rank_changes, mut cases) = (0.0f64, 0, 0);
    for seed in 0..50 {
        let ds = random_small_dataset(seed, 50).unwrap();
        let (theta, eta, rank) = scale_signature(&ds);
        for s in [0.5, 3.0] {
            cases += 1;
            let (t2, e2, r2) = scale_signature(&scaled(&ds, s));
            for (a, b) in theta.iter().zip(&t2) {
                worst = worst.max((a - b).abs());
            }
            worst = worst.max((eta - e2).abs());
            if rank != r2 {
                rank_changes += 1;
            }
        }
    }
    outcome(
        worst <= 1e-9 && rank_changes == 0,
        format!("{cases} scalings, max θ/η change {worst:.1e}, {rank_changes} ranking changes"),
    )
}

// 4

fn planted_imbalance() -> Outcome {
    let cfg = DensityConfig::default();
    let mut wins = 0;
    let mut lines = Vec::new();
    for seed in SEEDS {
        let ds = generate_synthetic(&planted::dataset(seed)).unwrap();
        let raw_r = class_entropy(
            &ds,
            &ds.view_vectors(planted::RAW_VIEW).unwrap(),
            &cfg,
            raw(planted::RAW_VIEW),
        )
        .unwrap();
        let spec = planted::specs()
            .into_iter()
            .find(|s| s.id == planted::SIGNAL_MACHINE)
            .unwrap();
        let m = train(&spec, &ds).unwrap();
        let reps = m.represent_all(&ds, Execution::default()).unwrap();
        let mr = class_entropy(
            &ds,
            &reps,
            &cfg,
            ReportSource::Machine {
                id: spec.id.clone(),
            },
        )
        .unwrap();
        if mr.imbalance < raw_r.imbalance {
            wins += 1;
        } else {
            lines.push(format!(
                "seed {seed}: {:.3} >= {:.3}",
                mr.imbalance, raw_r.imbalance
            ));
        }
    }
    outcome(
        wins == SEEDS.count(),
        format!("{wins}/20 seeds with machine η < raw η{}", misses(&lines)),
    )
}

fn misses(lines: &[String]) -> String {
    if lines.is_empty() {
        String::new()
    } else {
        format!(" [{}]", lines.join("; "))
    }
}

// 5

fn mirror_f1(ds: &Dataset, split: &Split, test: &Dataset, d1: bool, d2: bool) -> (f64, Cascade) {
    let c = select(
        ds,
        split,
        &mirror::specs(d1, d2),
        mirror::RARE,
        mirror::RAW_VIEW,
        &StormConfig::default(),
        &DensityConfig::default(),
    )
    .unwrap();
    (evaluate(&c, test, mirror::RARE).unwrap().f1, c)
}

fn mirror_ablation() -> Outcome {
    let start = Instant::now();
    let (mut ok, mut excluded, mut same, mut drops) = (0, 0, 0, 0);
    let mut lines = Vec::new();
    for seed in SEEDS {
        let ds = generate_synthetic(&mirror::dataset(seed)).unwrap();
        let test = generate_synthetic(&mirror::dataset(seed + TEST_SEED_OFFSET)).unwrap();
        let split = stratified_split(&ds, 0.3, seed).unwrap();
        let (all, cascade) = mirror_f1(&ds, &split, &test, true, true);
        let (no_d2, _) = mirror_f1(&ds, &split, &test, true, false);
        let (no_d1, _) = mirror_f1(&ds, &split, &test, false, true);
        let ex = !cascade
            .nodes
            .iter()
            .any(|n| n.machine.spec.view == mirror::D2);
        let unchanged = (all - no_d2).abs() < 0.005;
        let drop = all - no_d1 > 0.3;
        excluded += ex as usize;
        same += unchanged as usize;
        drops += drop as usize;
        if ex && unchanged && drop {
            ok += 1;
        } else {
            lines.push(format!(
                "seed {seed}: {:?} F1 {all:.3}, no-d2 {no_d2:.3}, no-d1 {no_d1:.3}",
                cascade.sequence()
            ));
        }
    }
    let t = start.elapsed();
    outcome(
        ok >= 18 && t < Duration::from_secs(60),
        format!(
            "{ok}/20 seeds (d2 excluded {excluded}, F1 unchanged without d2 {same}, drop > 0.3 without d1 {drops}), {:.1}s{}",
            t.as_secs_f64(),
            misses(&lines)
        ),
    )
}

// 6

fn greedy_gap() -> Outcome {
    let storm = StormConfig {
        max_depth: 3,
        ..StormConfig::default()
    };
    let (mut within, mut exceeded) = (0, 0);
    let mut lines = Vec::new();
    for seed in SEEDS {
        let ds = generate_synthetic(&planted::dataset(seed)).unwrap();
        let split = stratified_split(&ds, 0.3, seed).unwrap();
        let specs = planted::specs();
        let c = select(
            &ds,
            &split,
            &specs,
            planted::RARE,
            planted::RAW_VIEW,
            &storm,
            &DensityConfig::default(),
        )
        .unwrap();
        let best = oracle_best_subset(&ds, &split, &specs, planted::RARE, &storm, 3).unwrap();
        let g = c.report.validation.f1;
        if g >= best.f1 - 0.05 {
            within += 1;
        } else {
            lines.push(format!(
                "seed {seed}: {:?} {g:.3} vs {:?} {:.3}",
                c.sequence(),
                best.sequence,
                best.f1
            ));
        }
        if g > best.f1 {
            exceeded += 1;
        }
    }
    outcome(
        within >= 18 && exceeded == 0,
        format!(
            "{within}/20 within 0.05 of exhaustive, {exceeded} above it{}",
            misses(&lines)
        ),
    )
}

// 7

fn gini_fixture_cascade(epsilon_g: f64) -> Cascade {
    let cs = OriginalClassSet::new(vec!["common".into(), "rare".into()], "rare").unwrap();
    let p = |id: String, label: &str, x: f64| Instance::new(id, label).with_view("v", vec![x]);
    let mut insts: Vec<Instance> = (0..10)
        .map(|i| p(format!("c{i}"), "common", i as f64 / 10.0))
        .collect();
    insts.push(p("c-stray".into(), "common", 10.05));
    for (i, x) in [9.9, 10.0, 10.1].into_iter().enumerate() {
        insts.push(p(format!("r{i}"), "rare", x));
    }
    insts.push(p("vc0".into(), "common", 0.45));
    insts.push(p("vc1".into(), "common", 0.55));
    insts.push(p("vr0".into(), "rare", 10.02));
    let ds = Dataset::new(cs, vec![ViewSchema::with_dim("v", 1)], insts).unwrap();
    let split = Split::new((0..14).collect(), (14..17).collect());
    let spec = MachineSpec::new(
        "centroid",
        "v",
        LabelPartition::rare_vs_rest(ds.class_set()),
        MachineKind::NearestCentroid,
    );
    let cfg = StormConfig {
        epsilon_g,
        ..StormConfig::default()
    };
    select(
        &ds,
        &split,
        &[spec],
        "rare",
        "v",
        &cfg,
        &DensityConfig::default(),
    )
    .unwrap()
}

fn gini_gating() -> Outcome {
    let low = gini_fixture_cascade(0.2);
    let high = gini_fixture_cascade(0.5);
    let pass = low.nodes[0].gini == Some(0.375)
        && low.nodes[0].decision == Decision::Recurse
        && low.depth() > 1
        && high.nodes[0].gini == Some(0.375)
        && high.nodes[0].decision == Decision::Stop
        && high.depth() == 1
        && high.report.stop_reason == StopReason::RareBlockPure;
    outcome(
        pass,
        format!(
            "gini {:?}; ε_g 0.2 -> {:?} (depth {}), ε_g 0.5 -> {:?} (depth {}, {:?})",
            low.nodes[0].gini,
            low.nodes[0].decision,
            low.depth(),
            high.nodes[0].decision,
            high.depth(),
            high.report.stop_reason
        ),
    )
}

// 8

/// Upstream centroid machine on `u` decides A for the probe; the downstream
/// 20-NN machine on `w` gives it rare score `rare_votes / 20`.
fn override_cascade(rare_votes: usize) -> Cascade {
    let cs = OriginalClassSet::new(vec!["A".into(), "B".into(), "R".into()], "R").unwrap();
    let schema = vec![ViewSchema::with_dim("u", 1), ViewSchema::with_dim("w", 1)];
    let inst = |id: String, label: &str, u: f64, w: f64| {
        Instance::new(id, label)
            .with_view("u", vec![u])
            .with_view("w", vec![w])
    };
    let up_data = Dataset::new(
        cs.clone(),
        schema.clone(),
        vec![
            inst("a".into(), "A", 0.0, 0.0),
            inst("b".into(), "B", 10.0, 0.0),
            inst("r".into(), "R", 10.0, 0.0),
        ],
    )
    .unwrap();
    let mut down = Vec::new();
    for i in 0..20 {
        let (label, w) = if i < rare_votes {
            ("R", 1.0)
        } else {
            ("A", -1.0)
        };
        down.push(inst(format!("d{i}"), label, 0.0, w));
    }
    down.push(inst("far".into(), "B", 0.0, 50.0));
    let down_data = Dataset::new(cs, schema, down).unwrap();
    let up = train(
        &MachineSpec::new(
            "up",
            "u",
            LabelPartition::from_strs(&[&["A"], &["B", "R"]]),
            MachineKind::NearestCentroid,
        ),
        &up_data,
    )
    .unwrap();
    let downstream = train(
        &MachineSpec::new(
            "down",
            "w",
            LabelPartition::from_strs(&[&["R"], &["A", "B"]]),
            MachineKind::Knn,
        )
        .with_hyperparameter("k", 20.0),
        &down_data,
    )
    .unwrap();
    let node = |machine, selected_block, decision| CascadeNode {
        machine,
        selected_block,
        decision,
        gini: None,
        eig: 0.0,
    };
    assemble_cascade(
        vec![
            node(up, 1, Decision::Recurse),
            node(downstream, 0, Decision::Stop),
        ],
        "R",
        "u",
        &StormConfig::default(),
        &DensityConfig::default(),
    )
    .unwrap()
}

fn predict_labels_csv(dir: &Path, cascade: &Cascade, tag: &str) -> Option<String> {
    let cascade_path = dir.join(format!("override-{tag}.json"));
    std::fs::write(&cascade_path, cascade.to_json().unwrap()).unwrap();
    let data_path = dir.join("probe.csv");
    std::fs::write(&data_path, "id,label,u:0,w:0\nprobe,A,0,0\nother,B,10,0\n").unwrap();
    let out = dir.join(format!("labels-{tag}.csv"));
    let status = storm_bin()
        .args(["predict", "--cascade"])
        .arg(&cascade_path)
        .arg("--dataset")
        .arg(&data_path)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    status
        .status
        .success()
        .then(|| std::fs::read_to_string(out).unwrap())
}

fn override_rule(dir: &Path) -> Outcome {
    // upstream softmin score over centroid distances 0 and 10
    let upstream = format_real(1.0 / (1.0 + (-10.0f64).exp()));
    let expect_high = "id,label,score,overridden,coarse\nprobe,R,0.94999999999999996,true,false\nother,R,0.94999999999999996,false,false\n";
    let expect_low = format!(
        "id,label,score,overridden,coarse\nprobe,A,{upstream},false,false\nother,R,0.84999999999999998,false,false\n"
    );
    let high = predict_labels_csv(dir, &override_cascade(19), "095");
    let low = predict_labels_csv(dir, &override_cascade(17), "085");
    let ok_high = high.as_deref() == Some(expect_high);
    let ok_low = low.as_deref() == Some(expect_low.as_str());
    outcome(
        ok_high && ok_low,
        format!(
            "score 0.95 -> {}, score 0.85 -> {}",
            if ok_high {
                "rare label, bit-exact"
            } else {
                "MISMATCH"
            },
            if ok_low {
                "upstream label, bit-exact"
            } else {
                "MISMATCH"
            }
        ),
    )
}

// 9

fn run_select(dir: &Path, tag: &str, threads: Option<&str>) -> Option<(Vec<u8>, Vec<u8>)> {
    let out = dir.join(format!("cascade-{tag}.json"));
    let mut cmd = storm_bin();
    cmd.args(["select", "--dataset"])
        .arg(dir.join("mirror.csv"))
        .arg("--specs")
        .arg(dir.join("specs.json"))
        .arg("--config")
        .arg(dir.join("config.json"))
        .args([
            "--rare-class",
            mirror::RARE,
            "--raw-view",
            mirror::RAW_VIEW,
            "--seed",
            "5",
            "--out",
        ])
        .arg(&out);
    if let Some(t) = threads {
        cmd.args(["--threads", t]);
    }
    let o = cmd.output().unwrap();
    if !o.status.success() {
        return None;
    }
    let report = dir.join(format!("cascade-{tag}.report.json"));
    Some((std::fs::read(out).unwrap(), std::fs::read(report).unwrap()))
}

fn determinism(dir: &Path) -> Outcome {
    save_csv(
        &generate_synthetic(&mirror::dataset(5)).unwrap(),
        dir.join("mirror.csv"),
    )
    .unwrap();
    write_json(dir.join("specs.json"), &mirror::specs(true, true)).unwrap();
    std::fs::write(
        dir.join("config.json"),
        r#"{"storm": {"max_depth": 4}, "validation_fraction": 0.3}"#,
    )
    .unwrap();
    let a = run_select(dir, "a", None);
    let b = run_select(dir, "b", None);
    let c = run_select(dir, "c", Some("1"));
    let pass = a.is_some() && a == b && a == c;
    outcome(
        pass,
        match &a {
            Some((cascade, report)) => format!(
                "3 runs (one single-threaded): cascade {} bytes, report {} bytes, identical: {}",
                cascade.len(),
                report.len(),
                a == b && a == c
            ),
            None => "select failed".into(),
        },
    )
}

// 10

fn smote_contract() -> Outcome {
    let ds = generate_synthetic(&mirror::dataset(2)).unwrap();
    let (mut count_ok, mut off_segment, mut runs) = (true, 0usize, 0);
    let mut reproducible = true;
    let dump = |d: &Dataset| -> String {
        d.instances()
            .iter()
            .filter(|i| i.synthetic)
            .map(|i| {
                let v: Vec<String> = i
                    .view(mirror::D1)
                    .unwrap()
                    .iter()
                    .map(|&x| format_real(x))
                    .collect();
                format!("{},{},{}\n", i.id, i.label, v.join(","))
            })
            .collect()
    };
    for target in [6, 10, 45, 90, 200] {
        for seed in 0..4 {
            runs += 1;
            let cfg = SmoteConfig {
                target_count: Some(target),
                seed,
                ..SmoteConfig::default()
            };
            let (out, origins) =
                smote_oversample_traced(&ds, mirror::RARE, mirror::D1, &cfg).unwrap();
            let n = out
                .instances()
                .iter()
                .filter(|i| i.label == mirror::RARE)
                .count();
            count_ok &= n == target;
            for o in &origins {
                let a = ds.instances()[o.base].view(mirror::D1).unwrap();
                let b = ds.instances()[o.neighbor].view(mirror::D1).unwrap();
                let s = out.instances()[out.position(&o.id).unwrap()]
                    .view(mirror::D1)
                    .unwrap();
                let gap = euclidean_distance(a, s).unwrap() + euclidean_distance(s, b).unwrap()
                    - euclidean_distance(a, b).unwrap();
                if gap.abs() > 1e-9 || !(0.0..=1.0).contains(&o.u) {
                    off_segment += 1;
                }
            }
            let again = smote_oversample_traced(&ds, mirror::RARE, mirror::D1, &cfg)
                .unwrap()
                .0;
            reproducible &= dump(&out) == dump(&again);
        }
    }
    outcome(
        count_ok && off_segment == 0 && reproducible,
        format!(
            "{runs} runs: target counts {}, {off_segment} synthetic points off their segment, reruns byte-identical: {reproducible}",
            if count_ok { "met" } else { "MISSED" }
        ),
    )
}

fn main() {
    let strict = std::env::args().any(|a| a == "--strict")
        || std::env::var("STORM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let dir = tempfile::tempdir().unwrap();
    let checks: Vec<(&str, Check)> = vec![
        ("entropy oracle equivalence", Box::new(oracle_equivalence)),
        ("entropy bounds and normalization", Box::new(entropy_bounds)),
        ("scale invariance", Box::new(scale_invariance)),
        ("planted imbalance reduction", Box::new(planted_imbalance)),
        ("mirror ablation pattern", Box::new(mirror_ablation)),
        ("greedy vs exhaustive gap", Box::new(greedy_gap)),
        ("gini gating", Box::new(gini_gating)),
        ("override rule", Box::new(|| override_rule(dir.path()))),
        ("select determinism", Box::new(|| determinism(dir.path()))),
        ("smote contract", Box::new(smote_contract)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {}/{} passed",
        checks.len() - failed,
        checks.len()
    );
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
