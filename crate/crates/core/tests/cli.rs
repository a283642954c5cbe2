use std::path::Path;
use std::process::{Command, Output};

use sparse_mimo::experiments::ResultTable;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparse-mimo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL_MOMENTS: &str = r#"{"sweep": {"m_values": [8, 32], "d_values": [0.5]}, "trials": 300}"#;

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", SMALL_MOMENTS);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (out, threads) in [(&a, "1"), (&b, "2")] {
        let o = run(&["moments", "--config", &cfg, "--seed", "42", "--threads", threads, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let c = dir.path().join("c.csv");
    run(&["moments", "--config", &cfg, "--seed", "43", "--out", c.to_str().unwrap()]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn stdout_matches_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", SMALL_MOMENTS);
    let file = dir.path().join("x.csv");
    let to_stdout = run(&["moments", "--config", &cfg]);
    assert!(to_stdout.status.success());
    run(&["moments", "--config", &cfg, "--out", file.to_str().unwrap()]);
    // The output path is not part of the embedded configuration.
    assert_eq!(to_stdout.stdout, std::fs::read(&file).unwrap());
}

#[test]
fn metadata_is_embedded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", SMALL_MOMENTS);
    let o = run(&["moments", "--config", &cfg, "--seed", "7", "--trials", "50"]);
    let table = ResultTable::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(table.meta("seed"), Some("7"));
    assert_eq!(table.meta("trials"), Some("50"));
    assert_eq!(table.meta("experiment"), Some("moments"));
    assert_eq!(table.meta("config_hash").unwrap().len(), 64);
    assert!(table.meta("timestamp").is_none());

    let o = run(&["moments", "--config", &cfg, "--trials", "50", "--timestamp"]);
    let table = ResultTable::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(table.meta("timestamp").unwrap().starts_with("unix:"));
}

#[test]
fn json_format_by_flag_and_extension() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", SMALL_MOMENTS);
    let o = run(&["moments", "--config", &cfg, "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["columns"][0], "d_over_lambda");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);

    let out = dir.path().join("r.json");
    run(&["moments", "--config", &cfg, "--out", out.to_str().unwrap()]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.trim_start().starts_with('{'));
}

#[test]
fn missing_config_exits_1_naming_path() {
    let o = run(&["moments", "--config", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/definitely/not/here.json"));
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("wrong_kind.json", r#"{"experiment": "capacity"}"#),
        ("unknown_key.json", r#"{"trials": 10, "colour": 3}"#),
        ("bad_json.json", "{ not json"),
        ("bad_system.json", r#"{"system": {"S": 0}}"#),
        ("normalized.json", r#"{"system": {"gain_mode": "NormalizedEnergy"}, "trials": 10}"#),
    ];
    for (name, json) in cases {
        let cfg = write_config(dir.path(), name, json);
        let o = run(&["moments", "--config", &cfg]);
        assert_eq!(o.status.code(), Some(1), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let cfg = write_config(dir.path(), "k_gt_m.json", r#"{"sweep": {"m_values": [4]}, "trials": 100}"#);
    assert_eq!(run(&["eigen-cdf", "--config", &cfg]).status.code(), Some(1));
    assert_eq!(run(&["moments", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["moments", "--trials", "1"]).status.code(), Some(1));
}

#[test]
fn capacity_rho_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"system": {"K": 2}, "sweep": {"m_values": [8], "d_values": [0.5]}, "trials": 5}"#,
    );
    let o = run(&["capacity", "--config", &cfg, "--rho", "1,100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = ResultTable::parse_csv(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(t.column("rho_d").unwrap(), vec![1.0, 100.0]);
}

#[test]
fn validate_passes_and_checks_hashes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", SMALL_MOMENTS);
    let out = dir.path().join("r.csv");
    run(&["moments", "--config", &cfg, "--out", out.to_str().unwrap()]);

    let o = run(&["validate", "--config", &cfg, "--check", out.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{stdout}");
    assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{stdout}");

    let tampered = dir.path().join("t.csv");
    let text = std::fs::read_to_string(&out).unwrap().replace("\"seed\":1", "\"seed\":2");
    std::fs::write(&tampered, text).unwrap();
    let o = run(&["validate", "--check", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn help_and_version() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    let help = String::from_utf8_lossy(&o.stdout);
    for sub in ["moments", "eigen-cdf", "capacity", "validate"] {
        assert!(help.contains(sub));
    }
    assert!(run(&["--version"]).status.success());
}

#[test]
fn hash_check_survives_default_spacing_grid() {
    // The default capacity grid has spacings such as 0.35333333333333328
    // that must re-parse to the same bits for the hash to re-derive.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cap.csv");
    let o = run(&["capacity", "--trials", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["validate", "--trials", "200", "--check", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}
