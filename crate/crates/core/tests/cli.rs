use std::fs;
use std::process::{Command, Output};

fn levy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levy"))
        .args(args)
        .env_remove("LEVY_THREADS")
        .output()
        .expect("run levy")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn walk_is_byte_identical() {
    let a = levy(&["walk", "--alpha", "2.5", "--steps", "100", "--seed", "7"]);
    let b = levy(&["walk", "--alpha", "2.5", "--steps", "100", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,x,y,phase_id"));
    assert_eq!(lines.count(), 101);
    let c = levy(&["walk", "--alpha", "2.5", "--steps", "100", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_layer_bounds_passes() {
    let out = levy(&["verify", "--suite", "lemma1", "--dmax", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["details"]["result"]["pairs"], 66);
}

#[test]
fn search_at_origin_hits_immediately() {
    let out = levy(&["search", "--k", "4", "--ell", "0", "--budget", "100", "--alpha", "2.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["hit_step"], 0);
    assert_eq!(v["k"], 4);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["strategy"]["kind"], "fixed");
}

#[test]
fn config_errors_exit_one_and_name_the_flag() {
    let out = levy(&["walk", "--alpha", "2.5", "--steps", "5", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--frobnicate"));
    let out = levy(&["walk", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--alpha"));
    let out = levy(&["search", "--k", "2", "--ell", "3", "--budget", "10", "--strategy", "uniform", "--lo", "3", "--hi", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = levy(&["walk", "--alpha", "2.5", "--steps", "5", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ell_overrides_explicit_target_with_warning() {
    let out = levy(&["search", "--k", "1", "--ell", "5", "--target-x", "2", "--target-y", "-2", "--budget", "10", "--alpha", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["target"], serde_json::json!({"x": 5, "y": 0}));
}

#[test]
fn threads_do_not_change_output() {
    let args = ["search", "--k", "32", "--ell", "10", "--budget", "2000", "--strategy", "optimal", "--seed", "5"];
    let one = levy(&[&args[..], &["--threads", "1"]].concat());
    let many = levy(&[&args[..], &["--threads", "8"]].concat());
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_levy")).args(args).env("LEVY_THREADS", "3").output().unwrap();
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn sweep_fit_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = levy(&[
        "sweep", "--alphas", "2.5", "--ells", "4,8,16", "--budget-c", "10", "--trials", "200", "--seed", "2", "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("alpha,ell,k,budget,trial,hit_step,exhausted\n"));
    assert_eq!(text.lines().count(), 601);

    let fit = levy(&["fit", "--input", csv.to_str().unwrap()]);
    assert!(fit.status.success());
    let v: serde_json::Value = serde_json::from_slice(&fit.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
    assert_eq!(v["fits"][0]["reference_slope"], -0.5);
    assert!(v["fits"][0]["fit"]["slope"].is_number());

    let fit_csv = levy(&["fit", "--input", csv.to_str().unwrap(), "--format", "csv"]);
    assert!(stdout(&fit_csv).starts_with("alpha,k,budget,points,slope,intercept,r2,reference_slope\n"));
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "seed = 7\n[walk]\nalpha = 2.5\nsteps = 100\n").unwrap();
    let from_file = levy(&["walk", "--config", cfg.to_str().unwrap()]);
    let direct = levy(&["walk", "--alpha", "2.5", "--steps", "100", "--seed", "7"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, direct.stdout);
    let overridden = levy(&["walk", "--config", cfg.to_str().unwrap(), "--steps", "10"]);
    assert_eq!(stdout(&overridden).lines().count(), 12);

    let json = dir.path().join("run.json");
    fs::write(&json, r#"{"seed": 7, "walk": {"alpha": "oops", "steps": 1}}"#).unwrap();
    let bad = levy(&["walk", "--config", json.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--alpha"));
}

#[test]
fn verify_projection_report_layout() {
    let out = levy(&["verify", "--suite", "projection"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suites"][0]["name"], "projection");
    assert!(v["suites"][0]["details"]["result"]["measured_slope"].as_f64().unwrap() < -2.2);
}
