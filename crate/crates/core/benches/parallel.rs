use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use storm_core::entropy::{class_entropy_with, ReportSource};
use storm_core::io::generate_synthetic;
use storm_core::io::presets::planted;
use storm_core::io::{ClassCount, SyntheticSpec};
use storm_core::storm::select_with;
use storm_core::{stratified_split, DensityConfig, Execution, StormConfig};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

/// The planted setup with every class scaled up by `factor`.
fn scaled_planted(factor: usize) -> SyntheticSpec {
    let mut spec = planted::dataset(7);
    spec.classes = spec
        .classes
        .iter()
        .map(|c| ClassCount {
            name: c.name.clone(),
            count: c.count * factor,
        })
        .collect();
    spec
}

fn entropy(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_entropy");
    for factor in [1, 8] {
        let ds = generate_synthetic(&scaled_planted(factor)).unwrap();
        let reps = ds.view_vectors(planted::RAW_VIEW).unwrap();
        let source = ReportSource::Raw {
            view: planted::RAW_VIEW.into(),
        };
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, ds.len()), &ds, |b, ds| {
                b.iter(|| {
                    class_entropy_with(ds, &reps, &DensityConfig::default(), source.clone(), exec)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn selection(c: &mut Criterion) {
    let mut group = c.benchmark_group("select");
    group.sample_size(10);
    for factor in [1, 4] {
        let ds = generate_synthetic(&scaled_planted(factor)).unwrap();
        let split = stratified_split(&ds, 0.3, 7).unwrap();
        let specs = planted::specs();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, ds.len()), &ds, |b, ds| {
                b.iter(|| {
                    select_with(
                        black_box(ds),
                        &split,
                        &specs,
                        planted::RARE,
                        planted::RAW_VIEW,
                        &StormConfig::default(),
                        &DensityConfig::default(),
                        exec,
                    )
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, entropy, selection);
criterion_main!(benches);
