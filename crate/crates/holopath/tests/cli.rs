use std::path::Path;
use std::process::{Command, Output};

fn holopath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holopath")).args(args).output().expect("binary runs")
}

fn schedule_json(out: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(out.join("synth/schedule.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

const SMALL_AREA_MAP: &str = "[sweep]\narea_chi_pi = [0.5, 1.0, 3]\narea_gamma_pi = [0.0, 0.5, 3]\n";

#[test]
fn synth_reports_pulse_area() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = holopath(&["-o", out, "synth", "--gate", "rx:0.5pi", "--chi", "0.25pi"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = schedule_json(dir.path());
    let s = v["pulse_area"].as_f64().unwrap();
    assert!((s - 4.5776).abs() < 1e-4, "S = {s}");
    let csv = std::fs::read_to_string(dir.path().join("synth/pulse.csv")).unwrap();
    assert_eq!(csv.lines().count(), 402);
}

#[test]
fn synth_zero_rotation_has_empty_latitude() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = holopath(&["-o", out, "synth", "--gate", "rz:0", "--chi", "0.3pi"]);
    assert!(o.status.success());
    let v = schedule_json(dir.path());
    assert_eq!(v["schedule"]["tau1"], v["schedule"]["tau2"]);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(holopath(&["synth", "--gate", "rx:0.5pi"]).status.code(), Some(2));
    assert_eq!(holopath(&["synth", "--gate", "rq:1", "--chi", "0.25pi"]).status.code(), Some(2));
    assert_eq!(holopath(&["figure", "9z"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[lambda]\nsteps = 0\n").unwrap();
    let o = holopath(&["-f", cfg.to_str().unwrap(), "config"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda.steps"));
    std::fs::write(&cfg, "[lambda]\nstepz = 10\n").unwrap();
    assert_eq!(holopath(&["-f", cfg.to_str().unwrap(), "config"]).status.code(), Some(2));
}

#[test]
fn default_config_round_trips_through_cli() {
    let o = holopath(&["config"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, &o.stdout).unwrap();
    let again = holopath(&["-f", cfg.to_str().unwrap(), "config"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn area_map_single_loop_row_is_pi() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    std::fs::write(&cfg, SMALL_AREA_MAP).unwrap();
    let out = dir.path().join("out");
    let o = holopath(&["-f", cfg.to_str().unwrap(), "-o", out.to_str().unwrap(), "figure", "2a"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = holopath::io::Table::from_csv(&std::fs::read_to_string(out.join("2a/data.csv")).unwrap()).unwrap();
    let chi = table.column("chi").unwrap();
    let area = table.column("area_over_pi").unwrap();
    let rows: Vec<f64> = chi.iter().zip(&area).filter(|(c, _)| (**c - std::f64::consts::PI).abs() < 1e-12).map(|(_, a)| *a).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|a| (a - 1.0).abs() < 1e-12), "{rows:?}");
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("2a/meta.json")).unwrap()).unwrap();
    assert!(meta.get("runtime_s").is_none());
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn figure_outputs_are_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    std::fs::write(&cfg, SMALL_AREA_MAP).unwrap();
    let out = dir.path().join("out");
    let run = |workers: &str| {
        let o = holopath(&["-f", cfg.to_str().unwrap(), "-o", out.to_str().unwrap(), "--workers", workers, "figure", "2a"]);
        assert!(o.status.success());
        let data = std::fs::read(out.join("2a/data.csv")).unwrap();
        let meta = std::fs::read(out.join("2a/meta.json")).unwrap();
        (data, meta)
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("8"));
}

#[test]
fn verify_single_criterion() {
    let o = holopath(&["verify", "--only", "area-law"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let crit = rep["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 1);
    assert_eq!(crit[0]["id"], "area-law");
    assert!(String::from_utf8_lossy(&o.stderr).contains("[PASS]"));
}

#[test]
fn tampered_eta_fails_holonomy_ratio() {
    let o = holopath(&["verify", "--only", "holonomy-ratio", "--tamper-eta"]);
    assert_eq!(o.status.code(), Some(1));
    let rep: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["passed"], false);
    let checks = rep["criteria"][0]["checks"].as_array().unwrap();
    let ratio = checks.iter().find(|c| c["name"] == "K/A at worst cell").unwrap();
    assert!(ratio["measured"].as_f64().unwrap().is_finite());
    assert!(String::from_utf8_lossy(&o.stderr).contains("[FAIL]"));
}
