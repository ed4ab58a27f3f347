use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rabikit"))
}

const CFG: &str = r#"{
  "params": { "omega_r": 1.0, "delta_omega": 1.0 },
  "grid": { "n": 128, "nu_min": -8.0, "nu_max": 8.0 },
  "initial": { "center": -2.0, "sigma": 0.3, "level": "ground" },
  "solver": { "kind": "oracle", "d_tau": 0.01 },
  "tau": { "end": 1.0, "samples": 3 }
}"#;

#[test]
fn simulate_then_compare() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, CFG).unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for (dir, extra) in [(&a, None), (&b, Some("--deterministic"))] {
        let mut cmd = bin();
        cmd.args(["simulate", "--config"]).arg(&cfg).arg("--out").arg(dir);
        cmd.args(extra);
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = bin().args(["compare", "--tol", "0"]).arg("--a").arg(&a).arg("--b").arg(&b).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("tau,max_pointwise,l2,d_pop_e,d_pop_g"));
}

#[test]
fn bad_config_exits_with_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, CFG.replace("\"grid\"", "\"extra\": 0, \"grid\"")).unwrap();
    let out = bin().args(["simulate", "--config"]).arg(&cfg).arg("--out").arg(tmp.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));
}

#[test]
fn selftest_passes() {
    let out = bin().arg("selftest").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
