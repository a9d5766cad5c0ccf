//! Binary-level behavior: exit codes, byte determinism, output formats,
//! and the worker-count environment knob.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn qsurvey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsurvey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qsurvey_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsurvey"))
        .args(args)
        .env("QSURVEY_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

/// Splits an envelope into (stable region bytes, embedded digest).
fn split_envelope(bytes: &str) -> (&str, &str) {
    let marker = ",\"stable_sha256\":\"";
    let cut = bytes.find(marker).expect("envelope has a digest");
    let start = cut + marker.len();
    (&bytes[..cut], &bytes[start..start + 64])
}

#[test]
fn verify_stdout_reports_are_reproducible() {
    let args = ["verify", "--suite", "metric", "--manifold", "wh", "--seed", "9"];
    let first = qsurvey(&args);
    let second = qsurvey(&args);
    assert_eq!(first.status.code(), Some(0));
    let text_a = stdout(&first);
    let text_b = stdout(&second);
    let (region_a, digest_a) = split_envelope(&text_a);
    let (region_b, digest_b) = split_envelope(&text_b);
    assert_eq!(region_a, region_b);
    assert_eq!(digest_a, digest_b);
}

#[test]
fn embedded_digest_matches_the_stable_region() {
    let output = qsurvey(&["verify", "--suite", "identity", "--manifold", "wh"]);
    assert_eq!(output.status.code(), Some(0));
    let payload = stdout(&output);
    let (region, digest) = split_envelope(&payload);
    // The region starts with `{"report":` and the hash covers the value.
    let report_bytes = region.strip_prefix("{\"report\":").unwrap();
    let mut hasher = Sha256::new();
    hasher.update(report_bytes.as_bytes());
    let recomputed = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    assert_eq!(digest, recomputed);
}

#[test]
fn thread_count_never_reaches_the_stable_region() {
    let args = ["verify", "--suite", "hv-epr", "--manifold", "wh", "--trials", "5000"];
    let serial = qsurvey_with_threads(&args, "1");
    let parallel = qsurvey_with_threads(&args, "4");
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(parallel.status.code(), Some(0));
    let text_serial = stdout(&serial);
    let text_parallel = stdout(&parallel);
    let (region_a, _) = split_envelope(&text_serial);
    let (region_b, _) = split_envelope(&text_parallel);
    assert_eq!(region_a, region_b);

    let envelope: Value = serde_json::from_str(&text_parallel).unwrap();
    assert_eq!(envelope["worker_threads"], Value::from(4));
}

#[test]
fn invalid_thread_env_is_a_config_error() {
    let output = qsurvey_with_threads(
        &["verify", "--suite", "identity", "--manifold", "su2"],
        "many",
    );
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("QSURVEY_THREADS"));
}

#[test]
fn config_errors_exit_two_before_any_output() {
    for (args, needle) in [
        (
            vec!["verify", "--suite", "bell", "--manifold", "wh", "--r", "1.5"],
            "r must be in [0,1)",
        ),
        (
            vec!["epr", "--manifold", "su2", "--trials", "10"],
            "n_trials below minimum 1000",
        ),
        (
            vec!["verify", "--suite", "identity", "--manifold", "su2", "--cutoff", "0"],
            "cutoff must be at least 1",
        ),
        (
            vec!["epr", "--manifold", "su2", "--grid", "0,9.9"],
            "Bloch angle",
        ),
        (
            vec!["survey", "--manifold", "wh", "--grid", "0:2"],
            "start:stop:count",
        ),
        (
            vec!["verify", "--suite", "identity", "--manifold", "su2", "--format", "csv"],
            "json reports only",
        ),
        (
            vec!["survey", "--manifold", "wh", "--format", "json"],
            "csv tables only",
        ),
    ] {
        let output = qsurvey(&args);
        assert_eq!(output.status.code(), Some(2), "{args:?}");
        assert!(output.stdout.is_empty(), "{args:?} wrote to stdout");
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert!(stderr.contains(needle), "{args:?}: {stderr}");
    }
}

#[test]
fn unwritable_output_path_exits_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("no-such-dir").join("report.json");
    let output = qsurvey(&[
        "verify",
        "--suite",
        "identity",
        "--manifold",
        "su2",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("cannot write"));
}

#[test]
fn failed_cases_exit_one_but_still_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bell.json");
    let output = qsurvey(&[
        "verify",
        "--suite",
        "bell",
        "--manifold",
        "wh",
        "--r",
        "0.9999",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    let envelope: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(envelope["report"]["overall_pass"], Value::Bool(false));
    let cases = envelope["report"]["cases"].as_array().unwrap();
    let build = cases
        .iter()
        .find(|c| c["name"] == "bell.wh.norm")
        .expect("build case present");
    assert_eq!(build["pass"], Value::Bool(false));
    assert!(
        build["provenance"].as_str().unwrap().starts_with("error:"),
        "{build}"
    );
}

#[test]
fn epr_envelope_embeds_experiments_and_respects_the_grid() {
    let output = qsurvey(&[
        "epr", "--manifold", "wh", "--grid", "0,1", "--trials", "2000", "--seed", "7",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let envelope: Value = serde_json::from_str(&stdout(&output)).unwrap();
    let experiments = envelope["report"]["experiments"].as_array().unwrap();
    assert_eq!(experiments.len(), 2);
    assert_eq!(experiments[0]["coordinate"], Value::from(0.0));
    assert_eq!(experiments[0]["observed_rate"], Value::from(1.0));
    assert_eq!(experiments[1]["n_trials"], Value::from(2000));
    assert_eq!(envelope["report"]["config"]["grid"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn epr_per_trial_csv_is_deterministic_and_well_formed() {
    let args = [
        "epr", "--manifold", "su2", "--grid", "0.5,1.5", "--trials", "1000", "--format", "csv",
    ];
    let first = qsurvey(&args);
    let second = qsurvey(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "trial_index,hidden_diameter,relation_diameter,coincidence");
    assert_eq!(lines.len(), 1 + 2 * 1000);
    assert!(!text.contains('\r'));
    for line in &lines[1..4] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert!(fields[3] == "true" || fields[3] == "false");
    }
}

#[test]
fn survey_table_is_byte_stable_and_matches_closed_forms() {
    let args = ["survey", "--manifold", "wh", "--grid", "0:2:5"];
    let first = qsurvey(&args);
    let second = qsurvey(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "relation_coordinate,d,p");
    assert_eq!(lines.len(), 6);
    // |delta lambda| = 1: p = exp(-1), d = sqrt(1 - exp(-1)).
    let unit: Vec<f64> = lines[3].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(unit[0], 1.0);
    assert!((unit[1] - 0.7950600976206501).abs() <= 1e-15);
    assert!((unit[2] - (-1.0f64).exp()).abs() <= 1e-15);
}

#[test]
fn survey_writes_the_table_to_a_file(){
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("table.csv");
    let output = qsurvey(&[
        "survey",
        "--manifold",
        "su2",
        "--grid",
        "0,3.141592653589793",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("relation_coordinate,d,p\n0,0,1\n"));
    assert!(Path::new(&out).exists());
}

#[test]
fn epr_default_grid_covers_five_points_and_passes() {
    let output = qsurvey(&["epr", "--manifold", "su2", "--trials", "20000"]);
    assert_eq!(output.status.code(), Some(0));
    let envelope: Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(envelope["report"]["cases"].as_array().unwrap().len(), 5);
    assert_eq!(envelope["report"]["overall_pass"], Value::Bool(true));
    assert_eq!(envelope["report"]["schema_version"], Value::from("1.0"));
    // Defaults are echoed even when unused by the command.
    assert_eq!(envelope["report"]["config"]["cutoff"], Value::from(64));
    assert_eq!(envelope["report"]["config"]["seed"], Value::from(0));
}
