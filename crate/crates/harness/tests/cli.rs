use std::path::Path;
use std::process::{Command, Output};

use ghz_erasure_core::codec::{build_u_enc, CodeLayout};
use ghz_erasure_harness::circuit;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ghz-erasure"));
    c.env_remove("GHZ_ERASURE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report on stdout")
}

/// Report with every `elapsed_ms` field zeroed.
fn without_timing(mut v: Value) -> String {
    for c in v["cases"].as_array_mut().unwrap() {
        c["elapsed_ms"] = Value::from(0);
    }
    serde_json::to_string(&v).unwrap()
}

#[test]
fn worked_example_single_run() {
    let out = run(&["--k", "5", "--scenario", "single-run", "--erase", "0:1:phase,1:5:phase"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let at = |key: &str| text.find(&format!("\n  \"{key}\":")).unwrap();
    assert!(at("config") < at("cases") && at("cases") < at("summary"));
    let r = json(&out);
    assert_eq!(r["cases"][0]["pattern"], "0:1,1:5");
    assert_eq!(r["cases"][0]["model"], "phase_flip");
    assert!(r["cases"][0]["fidelity"].as_f64().unwrap() >= 1.0 - 1e-10);
    assert_eq!(r["summary"]["pass"], true);
}

#[test]
fn k3_identity_sweep_has_seven_exact_cases() {
    let out = run(&["--k", "3", "--scenario", "sweep", "--model", "identity", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let cases = r["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 7);
    for c in cases {
        assert!((c["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
    assert_eq!(r["summary"]["cases"], 7);
}

#[test]
fn export_k3_encoder() {
    let out = run(&["--scenario", "export-circuit", "--k", "3", "--which", "enc"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 9);
    let (n, seq) = circuit::parse(&text).unwrap();
    assert_eq!(n, 6);
    assert_eq!(seq, build_u_enc(&CodeLayout::new(3).unwrap()));
}

#[test]
fn export_restore_and_rec() {
    let out = run(&["--k", "5", "--scenario", "export-circuit", "--which", "restore", "--erase", "0:1,1:5"]);
    assert_eq!(out.status.code(), Some(0));
    let (n, seq) = circuit::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(n, 20);
    assert_eq!(seq.len(), 15 + 10 + 5);

    let out = run(&["--k", "5", "--scenario", "export-circuit", "--which", "rec", "--erase", "1:5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().last(), Some("CZ 19 8"));
    let out = run(&["--k", "5", "--scenario", "export-circuit", "--which", "rec"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_runs_and_thread_counts() {
    let args = ["--k", "3", "--scenario", "sweep", "--model", "all", "--trials", "2", "--seed", "9"];
    let a = bin().args(args).env("GHZ_ERASURE_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("GHZ_ERASURE_THREADS", "3").output().unwrap();
    let c = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    let a = without_timing(json(&a));
    assert_eq!(a, without_timing(json(&b)));
    assert_eq!(a, without_timing(json(&c)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["cases"].as_array().unwrap().len(), 7 * 7 * 2);
    assert_eq!(v["cases"][1]["trial_seed"], 10);
}

#[test]
fn config_file_matches_flags_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "k = 5\nscenario = \"single-run\"\nerase = [\"0:1:phase\", \"1:5:phase\"]\nseed = 4\ntrials = 2\n",
    )
    .unwrap();
    let from_file = run(&["--config", cfg.to_str().unwrap()]);
    let from_flags = run(&[
        "--k", "5", "--scenario", "single-run", "--erase", "0:1:phase,1:5:phase", "--seed", "4",
        "--trials", "2",
    ]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(without_timing(json(&from_file)), without_timing(json(&from_flags)));

    let overridden = run(&["--config", cfg.to_str().unwrap(), "--trials", "1"]);
    assert_eq!(json(&overridden)["cases"].as_array().unwrap().len(), 1);
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.csv");
    let out = run(&[
        "--k", "3", "--scenario", "sweep", "--model", "phase,leak@5", "--format", "csv", "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        headers,
        ["pattern", "model", "word", "trial_seed", "fidelity", "max_deviation", "elapsed_ms"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 14);
    assert_eq!(&rows[1][1], "entangling_leak@5");
}

#[test]
fn encode_table_scenario() {
    let out = run(&["--k", "4", "--scenario", "encode-table"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["cases"].as_array().unwrap().len(), 16);
    assert!(r["summary"]["max_deviation"].as_f64().unwrap() < 1e-12);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--k", "2", "--scenario", "sweep"], 2),
        (&["--k", "6", "--scenario", "sweep"], 3),
        (&["--k", "9", "--scenario", "encode-table"], 3),
        (&["--scenario", "sweep"], 2),
        (&["--k", "3"], 2),
        (&["--k", "3", "--scenario", "single-run", "--erase", "0:1,0:2"], 2),
        (&["--k", "5", "--scenario", "single-run", "--erase", "0:1,1:1,2:1"], 2),
        (&["--k", "3", "--scenario", "single-run", "--erase", "0:4"], 2),
        (&["--k", "3", "--scenario", "single-run", "--erase", "2:1"], 2),
        (&["--k", "3", "--scenario", "single-run", "--model", "amplitude_damping"], 2),
        (&["--k", "3", "--scenario", "sweep", "--trials", "0"], 2),
        (&["--k", "3", "--scenario", "sweep", "--erase", "0:1"], 2),
        (&["--k", "3", "--scenario", "export-circuit"], 2),
        (&["--k", "3", "--scenario", "single-run", "--erase", "0:1", "--model", "phase,bit"], 2),
        (&["--k", "3", "--scenario", "sweep", "--config", "/nonexistent/run.toml"], 4),
        (&["--k", "3", "--unknown-flag"], 2),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let bad_env = bin()
        .args(["--k", "3", "--scenario", "sweep"])
        .env("GHZ_ERASURE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn unknown_config_keys_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "k = 3\nscenario = \"sweep\"\nthreads = 4\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(Path::new(&cfg).exists());
}
