use std::fs;
use std::path::Path;

use rabikit::scenario::{compare_dirs, compare_solutions, load_bundle, run_scenario, ScenarioConfig, SolverSpec};
use rabikit::RabiError;

const FREE: &str = r#"{
  "params": { "omega_r": 1.0, "delta_omega": 1.0 },
  "grid": { "n": 256, "nu_min": -8.0, "nu_max": 8.0 },
  "initial": { "center": -2.0, "sigma": 0.2, "level": "ground" },
  "solver": { "kind": "free" },
  "tau": { "end": 3.0, "samples": 5 }
}"#;

fn free() -> ScenarioConfig {
    ScenarioConfig::from_json(FREE).unwrap()
}

#[test]
fn unknown_keys_are_rejected() {
    let text = FREE.replace(r#""solver""#, r#""sovler": 1, "solver""#);
    let err = ScenarioConfig::from_json(&text).unwrap_err();
    assert!(err.to_string().contains("sovler"), "{err}");
    let nested = FREE.replace(r#""omega_r": 1.0"#, r#""omega_r": 1.0, "omega": 2.0"#);
    assert!(ScenarioConfig::from_json(&nested).is_err());
}

#[test]
fn validation_lists_every_violation() {
    let mut cfg = free();
    cfg.grid.n = 100;
    cfg.initial.sigma = -1.0;
    cfg.params.kappa = 1.0;
    cfg.tau.samples = 0;
    let err = cfg.validate().unwrap_err();
    let fields: Vec<&str> = err.violations.iter().map(|v| v.field.as_str()).collect();
    for f in ["grid.n", "initial.sigma", "tau.samples", "solver"] {
        assert!(fields.contains(&f), "{f} missing from {fields:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(run_scenario(&cfg, Some(dir.path())), Err(RabiError::Validation(_))));
}

#[test]
fn perturbative_rejects_noise_and_tabulated_potentials() {
    let mut cfg = free();
    cfg.params.epsilon = 1e-3;
    cfg.solver = SolverSpec::Perturbative { order: 2, refine: None };
    cfg.phase.noise = Some(rabikit::phase::NoiseParams { s: 0.1, seed: 1, d_tau: 0.01 });
    let err = cfg.validate().unwrap_err();
    assert!(err.violations.iter().any(|v| v.field.starts_with("phase")), "{err}");
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap()
}

#[test]
fn reruns_are_bit_identical() {
    let cfg = free();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ra = run_scenario(&cfg, Some(a.path())).unwrap();
    run_scenario(&cfg, Some(b.path())).unwrap();
    for f in ra.manifest.files.states.iter().chain(&ra.manifest.files.elements) {
        assert!(read(a.path(), f) == read(b.path(), f), "{f} differs");
    }
    assert!(read(a.path(), "populations.csv") == read(b.path(), "populations.csv"));
    // the manifests differ only in the recorded output directory
    let manifest = |d: &Path| {
        let mut v: serde_json::Value = serde_json::from_slice(&read(d, "manifest.json")).unwrap();
        v["config"]["out_dir"] = serde_json::Value::Null;
        v
    };
    assert_eq!(manifest(a.path()), manifest(b.path()));
    let m = compare_dirs(a.path(), b.path()).unwrap();
    assert_eq!(m.max_pointwise, 0.0);
    assert!(m.within(0.0));
}

#[test]
fn manifest_reloads_as_config_and_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = free();
    let run = run_scenario(&cfg, Some(dir.path())).unwrap();
    let again = ScenarioConfig::load(&dir.path().join("manifest.json")).unwrap();
    assert_eq!(again, run.manifest.config);
    let bundle = load_bundle(dir.path()).unwrap();
    assert_eq!(bundle.states.len(), 5);
    let m = compare_solutions(&run, &bundle).unwrap();
    assert_eq!(m.max_pointwise, 0.0);
    assert!(!run.manifest.conventions.is_empty());
}

#[test]
fn free_and_oracle_bundles_agree() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = free();
    run_scenario(&cfg, Some(a.path())).unwrap();
    let mut orc = cfg.clone();
    orc.solver = SolverSpec::Oracle { d_tau: Some(1e-3) };
    run_scenario(&orc, Some(b.path())).unwrap();
    let m = compare_dirs(a.path(), b.path()).unwrap();
    assert!(m.within(1e-6), "{m:?}");
    assert!(m.max_pointwise > 0.0);
}

#[test]
fn mismatched_grids_are_incomparable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let cfg = free();
    run_scenario(&cfg, Some(a.path())).unwrap();
    let mut other = cfg.clone();
    other.grid.n = 512;
    run_scenario(&other, Some(b.path())).unwrap();
    assert!(matches!(compare_dirs(a.path(), b.path()), Err(RabiError::Incomparable(_))));
}

#[test]
fn noise_path_is_exported() {
    let mut cfg = free();
    cfg.phase.noise = Some(rabikit::phase::NoiseParams { s: 0.2, seed: 9, d_tau: 0.05 });
    let dir = tempfile::tempdir().unwrap();
    let run = run_scenario(&cfg, Some(dir.path())).unwrap();
    let name = run.manifest.files.noise_path.clone().unwrap();
    let text = fs::read_to_string(dir.path().join(name)).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,delta_phi"));
    assert_eq!(lines.count(), 61);
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ScenarioConfig::load(&path).unwrap();
        cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        seen += 1;
    }
    assert!(seen >= 4);
}
