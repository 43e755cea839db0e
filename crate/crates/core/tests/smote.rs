use storm_core::io::format_real;
use storm_core::io::generate_synthetic;
use storm_core::io::presets::mirror;
use storm_core::resample::{smote_oversample_traced, SmoteConfig};
use storm_core::{euclidean_distance, Dataset};

fn source() -> Dataset {
    generate_synthetic(&mirror::dataset(11)).unwrap()
}

fn config(target: usize, seed: u64) -> SmoteConfig {
    SmoteConfig {
        target_count: Some(target),
        seed,
        ..SmoteConfig::default()
    }
}

fn dump(ds: &Dataset) -> String {
    let mut out = String::new();
    for inst in ds.instances().iter().filter(|i| i.synthetic) {
        let values: Vec<String> = inst
            .view(mirror::D1)
            .unwrap()
            .iter()
            .map(|&x| format_real(x))
            .collect();
        out.push_str(&format!(
            "{},{},{}\n",
            inst.id,
            inst.label,
            values.join(",")
        ));
    }
    out
}

#[test]
fn minority_reaches_the_target_count() {
    let ds = source();
    for target in [6, 7, 40, 100] {
        let (out, origins) =
            smote_oversample_traced(&ds, mirror::RARE, mirror::D1, &config(target, 1)).unwrap();
        let n = out
            .instances()
            .iter()
            .filter(|i| i.label == mirror::RARE)
            .count();
        assert_eq!(n, target);
        assert_eq!(origins.len(), target - 6);
        assert_eq!(out.len(), ds.len() + target - 6);
    }
}

#[test]
fn synthetic_points_lie_on_their_segments() {
    let ds = source();
    let (out, origins) =
        smote_oversample_traced(&ds, mirror::RARE, mirror::D1, &config(90, 5)).unwrap();
    for o in &origins {
        let a = ds.instances()[o.base].view(mirror::D1).unwrap();
        let b = ds.instances()[o.neighbor].view(mirror::D1).unwrap();
        let s = out.instances()[out.position(&o.id).unwrap()]
            .view(mirror::D1)
            .unwrap();
        assert!((0.0..1.0).contains(&o.u));
        assert_ne!(o.base, o.neighbor);
        for ((x, y), z) in a.iter().zip(b).zip(s) {
            assert!((x + o.u * (y - x) - z).abs() <= 1e-9);
        }
        let gap = euclidean_distance(a, s).unwrap() + euclidean_distance(s, b).unwrap()
            - euclidean_distance(a, b).unwrap();
        assert!(gap.abs() <= 1e-9, "{}: off segment by {gap:e}", o.id);
    }
}

#[test]
fn fixed_seed_reproduces_bytes() {
    let ds = source();
    let run = |seed| {
        dump(
            &smote_oversample_traced(&ds, mirror::RARE, mirror::D1, &config(50, seed))
                .unwrap()
                .0,
        )
    };
    assert_eq!(run(9), run(9));
    assert_ne!(run(9), run(10));
}

#[test]
fn target_below_current_is_rejected() {
    assert!(smote_oversample_traced(&source(), mirror::RARE, mirror::D1, &config(3, 0)).is_err());
}
