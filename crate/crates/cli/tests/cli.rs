use std::process::{Command, Output};

use serde_json::Value;

fn iqconc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iqconc"))
        .env_remove("IQCONC_SEED")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_results(o: &Output) -> Value {
    let v: Value = serde_json::from_str(&stdout(o)).unwrap();
    v["results"].clone()
}

#[test]
fn sweep_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = iqconc(&["swap", "sweep", "--from", "0", "--to", "0.5", "--step", "0.001", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# iqconc "));
    assert!(lines[0].contains("\"step\":0.001"));
    assert_eq!(lines[1], "phi1,yield_ghz,yield_gw,advantage");
    assert_eq!(lines.len(), 2 + 501);
    assert_eq!(lines[202], "0.2,0.208,0.398916497857,0.190916497857");
}

#[test]
fn sweep_sign_change_between_03_and_04() {
    let o = iqconc(&["swap", "sweep", "--from", "0", "--to", "0.5", "--step", "0.1", "--format", "json"]);
    let pts = json_results(&o);
    let adv: Vec<f64> = pts.as_array().unwrap().iter().map(|p| p["advantage"].as_f64().unwrap()).collect();
    assert_eq!(adv.len(), 6);
    assert!(adv[3] > 0.0 && adv[4] < 0.0);
}

#[test]
fn json_envelope_field_order() {
    let o = iqconc(&["swap", "crossover"]);
    let text = stdout(&o);
    let keys: Vec<usize> = ["tool_version", "command", "parameters", "results", "elapsed_ms"]
        .iter()
        .map(|k| text.find(&format!("\"{k}\"")).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let r = json_results(&o);
    assert!((r["crossover_phi1"].as_f64().unwrap() - 0.39493).abs() < 5e-4);
}

#[test]
fn exit_codes() {
    assert_eq!(iqconc(&["bases", "verify", "--basis", "gw", "--tol", "1e-12"]).status.code(), Some(0));
    assert_eq!(iqconc(&["swap", "sweep", "--step", "abc"]).status.code(), Some(1));
    assert_eq!(iqconc(&["swap", "sweep", "--unknown", "1"]).status.code(), Some(1));
    assert_eq!(iqconc(&["bases", "verify", "--basis", "nonsense"]).status.code(), Some(1));
    assert_eq!(iqconc(&["bases", "verify", "--basis", "gw", "--tol", "1e-20"]).status.code(), Some(2));
    assert_eq!(iqconc(&["report", "table1", "--out", "/nonexistent-dir/r.json"]).status.code(), Some(3));
    let o = iqconc(&["swap", "outcomes", "--phi1", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--phi1"));
}

#[test]
fn missing_flag_is_named() {
    let o = iqconc(&["perc", "threshold"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lattice"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sweep defaults\nfrom = 0.1\nto = 0.3\nstep = 0.1\n").unwrap();
    let o = iqconc(&["swap", "sweep", "--config", cfg.to_str().unwrap(), "--to", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("0.1,"));
    std::fs::write(&cfg, "nonsense = 3\n").unwrap();
    assert_eq!(iqconc(&["swap", "sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn seed_env_fallback() {
    let args = ["perc", "curve", "--lattice", "triangular-site", "--L", "16", "--trials", "50", "--from", "0.5", "--to", "0.5"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_iqconc")).env("IQCONC_SEED", "11").args(args).output().unwrap();
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "11"]);
    assert_eq!(stdout(&with_env), stdout(&iqconc(&flagged)));
    let default = iqconc(&args);
    assert!(stdout(&default).contains("\"seed\":42"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["perc", "curve", "--lattice", "honeycomb-bond", "--L", "16", "--trials", "100", "--from", "0.6", "--to", "0.7", "--step", "0.05"];
    let a = stdout(&iqconc(&args));
    let mut more = args.to_vec();
    more.extend(["--workers", "3"]);
    let b = stdout(&iqconc(&more));
    assert_eq!(a, b);
    assert!(a.lines().nth(1).unwrap() == "p,L,trials,spanning_fraction,std_err");
}

#[test]
fn assist_commands() {
    let o = iqconc(&["assist", "--l0", "0.5", "--l1", "0.5", "--l4", "0.7071067812", "--pair", "BC", "--basis", "hat"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_results(&o);
    assert!((r["yield"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let o = iqconc(&["assist", "optimize", "--a", "0.6", "--helper", "A"]);
    let r = json_results(&o);
    let (y, bound) = (r["yield"].as_f64().unwrap(), r["eoa_bound"].as_f64().unwrap());
    assert!(y <= bound + 1e-9 && (y - bound).abs() < 1e-6);
    assert_eq!(iqconc(&["assist", "--l0", "1"]).status.code(), Some(1));
}

#[test]
fn stats_and_outcomes() {
    let r = json_results(&iqconc(&["bases", "stats", "--basis", "gw", "--format", "json"]));
    assert!((r["average_roi"].as_f64().unwrap() - 0.75).abs() < 1e-9);
    let o = iqconc(&["swap", "outcomes", "--phi1", "0.3", "--basis", "ghz", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("outcome,probability,e2"));
    assert_eq!(text.lines().count(), 2 + 8);
}
