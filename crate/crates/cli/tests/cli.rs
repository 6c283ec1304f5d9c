//! End-to-end tests of the `squeezelab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_squeezelab"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("SQUEEZELAB_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn mandel_scan_reproduces_figure_grid() {
    let text = stdout_of(&[
        "mandel",
        "--z",
        "1",
        "--phi",
        "1.5707963",
        "--tau",
        "0.1",
        "--theta",
        "0",
        "--alpha",
        "0:30:0.1",
    ]);
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("z_re"))
        .collect();
    assert_eq!(data_rows.len(), 301);
    // a sub-Poissonian stretch exists
    let q_idx = text
        .lines()
        .find(|l| l.starts_with("z_re"))
        .unwrap()
        .split(',')
        .position(|c| c == "q")
        .unwrap();
    let negatives = data_rows
        .iter()
        .filter(|row| {
            row.split(',')
                .nth(q_idx)
                .and_then(|v| v.parse::<f64>().ok())
                .is_some_and(|q| q < 0.0)
        })
        .count();
    assert!(negatives > 10, "negatives = {negatives}");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "mandel",
        "--tau",
        "0.2",
        "--theta",
        "0,pi/8",
        "--alpha",
        "0:5:0.5",
        "--oracle-check",
        "0.2",
        "--seed",
        "7",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(first.contains("# oracle_check: fraction="));
}

#[test]
fn different_seed_changes_only_the_check_sample() {
    let base = [
        "mandel", "--tau", "0.2", "--theta", "0", "--alpha", "0:5:1", "--oracle-check", "0.5",
    ];
    let a = stdout_of(&[&base[..], &["--seed", "1"]].concat());
    let b = stdout_of(&[&base[..], &["--seed", "2"]].concat());
    let rows = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(rows(&a), rows(&b));
}

#[test]
fn transition_x_sweep_matches_expected_counts() {
    let text = stdout_of(&["transition", "--x", "-1:-0.732:0.001"]);
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("alpha"))
        .count();
    assert_eq!(rows, 269);
    let header = text.lines().find(|l| l.starts_with("alpha")).unwrap();
    assert_eq!(
        header,
        "alpha,tau_abs,tau_phase,a,b,c,l,m,n,x,s_minus,s_plus,flag"
    );
}

#[test]
fn transition_param_mode_emits_polynomials() {
    let text = stdout_of(&["transition", "--alpha", "0:2:1", "--tau", "0.5"]);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("alpha"))
        .collect();
    assert_eq!(rows.len(), 3);
    // identity-like row has x defined
    assert!(rows[0].split(',').nth(9).unwrap().starts_with('-'));
}

#[test]
fn photon_dist_mixed_requires_theta() {
    let out = run(&[
        "photon-dist",
        "--tau",
        "1",
        "--alpha",
        "0",
        "--n",
        "0:5",
        "--parity",
        "mixed",
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("theta"), "stderr: {err}");
}

#[test]
fn json_format_carries_metadata_and_rows() {
    let text = stdout_of(&[
        "variances",
        "--alpha",
        "0:1:1",
        "--tau-abs",
        "0.5",
        "--theta",
        "0",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(doc["metadata"]["quantity"], "variances");
    assert_eq!(doc["metadata"]["seed"], 42);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert!(doc["rows"][0]["var_q"].is_f64());
    assert!(doc["rows"][0]["flag"].is_null());
}

#[test]
fn config_file_runs_and_conflicts_with_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.toml");
    std::fs::write(
        &path,
        r#"
            quantity = "photon_dist"
            [grids]
            alpha = "0,1.5"
            n = "0:10"
            [fixed]
            tau = "1"
            parity = "odd"
        "#,
    )
    .unwrap();
    let text = stdout_of(&["photon-dist", "--config", path.to_str().unwrap()]);
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("alpha"))
        .count();
    assert_eq!(rows, 22);

    let out = run(&[
        "photon-dist",
        "--config",
        path.to_str().unwrap(),
        "--alpha",
        "0",
    ]);
    assert!(!out.status.success());

    // mismatched quantity is rejected
    let out = run(&["mandel", "--config", path.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn verify_passes_and_honors_overrides() {
    let text = stdout_of(&["verify", "--points", "40", "--only", "property_identity"]);
    assert!(text.contains("PASS property_identity"));
    assert!(text.contains("# 1 checks, 0 failed"));

    // an absurd tolerance forces a failure and a nonzero exit
    let out = run(&[
        "verify",
        "--points",
        "40",
        "--only",
        "property_identity",
        "--tol",
        "property_identity=1e-30",
    ]);
    assert!(!out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL property_identity"));
}

#[test]
fn verify_output_is_reproducible() {
    let args = ["verify", "--points", "30", "--seed", "9"];
    let skip_oracle = [
        "--only",
        "property_identity",
        "--only",
        "heisenberg",
        "--only",
        "port_complementarity",
    ];
    let full: Vec<&str> = args.iter().chain(skip_oracle.iter()).copied().collect();
    assert_eq!(stdout_of(&full), stdout_of(&full));
}

#[test]
fn thread_cap_is_accepted() {
    let out = Command::new(bin())
        .args(["variances", "--alpha", "0:1:1", "--tau-abs", "0.3"])
        .env("SQUEEZELAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(bin())
        .args(["variances", "--alpha", "0"])
        .env("SQUEEZELAB_THREADS", "zero")
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn invalid_specs_exit_nonzero() {
    // transition needs exactly one of x / parameter grids
    assert!(!run(&["transition"]).status.success());
    assert!(!run(&["transition", "--x", "-1:-0.9:0.01", "--alpha", "0"])
        .status
        .success());
    // bad grid syntax
    assert!(!run(&["variances", "--alpha", "0:1:0"]).status.success());
    // max-points cap
    assert!(!run(&[
        "mandel",
        "--alpha",
        "0:100:0.001",
        "--tau",
        "0.1",
        "--max-points",
        "1000"
    ])
    .status
    .success());
}
