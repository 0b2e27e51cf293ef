//! End-to-end tests driving the compiled `consec` binary.

use std::process::{Command, Output};

fn consec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_consec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = consec(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|line| line.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn coeffs_known_tables() {
    let text = stdout(&["coeffs", "--n", "3", "--k", "2"]);
    assert!(text.starts_with("n,k,i,region,value\n"));
    let values: Vec<String> = csv_rows(&text).into_iter().map(|r| r[4].clone()).collect();
    assert_eq!(values, vec!["0", "1", "3", "1"]);

    let text = stdout(&["coeffs", "--n", "4", "--k", "4"]);
    let values: Vec<String> = csv_rows(&text).into_iter().map(|r| r[4].clone()).collect();
    assert_eq!(values, vec!["0", "4", "6", "4", "1"]);
}

#[test]
fn coeffs_rejects_k_above_n() {
    let out = consec(&["coeffs", "--n", "3", "--k", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1 <= k <= n"), "{err}");
}

#[test]
fn bounds_tables() {
    let text = stdout(&["bounds", "--n", "16", "--k", "3"]);
    let rows = csv_rows(&text);
    let applicable: Vec<&Vec<String>> = rows.iter().filter(|r| r[3] == "true").collect();
    assert_eq!(
        applicable.iter().map(|r| r[2].as_str()).collect::<Vec<_>>(),
        vec!["5", "6", "7"]
    );
    // (lower, upper, exact) at i = 5
    assert_eq!(
        (applicable[0][4].as_str(), applicable[0][5].as_str(), applicable[0][6].as_str()),
        ("0", "426", "6")
    );

    let text = stdout(&["bounds", "--n", "16", "--k", "8"]);
    assert!(csv_rows(&text).iter().all(|r| r[3] == "false"));

    let text = stdout(&["bounds", "--n", "32", "--k", "9"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.iter().filter(|r| r[3] == "true").count(), 3);
    assert_eq!(rows.len(), 33);
}

#[test]
fn reliability_point_values() {
    let text = stdout(&["reliability", "--n", "4", "--k", "1", "--p", "0.5"]);
    assert_eq!(text, "n,k,p,r\n4,1,0.5,0.0625\n");
    let text = stdout(&["reliability", "--n", "3", "--k", "3", "--p", "0.5"]);
    assert_eq!(text, "n,k,p,r\n3,3,0.5,0.875\n");
}

#[test]
fn reliability_envelope_brackets_exact_curve() {
    let text = stdout(&[
        "reliability", "--n", "16", "--k", "3", "--p", "0:0.01:1", "--mode", "both",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 101);
    for row in rows {
        let r: f64 = row[3].parse().unwrap();
        let lo: f64 = row[4].parse().unwrap();
        let hi: f64 = row[5].parse().unwrap();
        assert!(lo <= r && r <= hi, "envelope breached at p={}", row[2]);
    }
}

#[test]
fn reliability_interval_collapses_when_every_index_is_exact() {
    let text = stdout(&["reliability", "--n", "16", "--k", "8", "--p", "0.25,0.75", "--mode", "interval"]);
    for row in csv_rows(&text) {
        assert_eq!(row[3], row[4], "interval should collapse for k >= n/3");
    }
}

#[test]
fn reliability_rejects_out_of_range_probability() {
    let out = consec(&["reliability", "--n", "4", "--k", "2", "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside [0, 1]"));
    let out = consec(&["reliability", "--n", "4", "--k", "2", "--p", "0:0:1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn errors_grid_bands() {
    let out = consec(&["errors", "--n", "32"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 32 * 33);
    let mut nonzero = 0usize;
    for row in &rows {
        let k: usize = row[1].parse().unwrap();
        if row[4] != "0" {
            nonzero += 1;
            assert!((3..=9).contains(&k), "nonzero error outside k=3..9: {row:?}");
            assert_eq!(row[3], "lower");
        }
    }
    assert!(nonzero > 0);
    // Bounded-pair tally goes to stderr, per-k sizes included. k = 2 has a
    // nonempty bounded range at this n even though its grid rows are exact.
    let note = String::from_utf8(out.stderr).unwrap();
    assert!(note.contains("bounded ranges cover 75 (k, i) pairs"), "{note}");
    assert!(note.contains("k=2: 11"), "{note}");
    assert!(note.contains("k=9: 3"), "{note}");

    // k = 8 band of the n = 16 grid is entirely exact.
    let text = stdout(&["errors", "--n", "16"]);
    for row in csv_rows(&text) {
        if row[1] == "8" {
            assert_eq!(row[4], "0");
            assert_eq!(row[3], "exact");
        }
    }
}

#[test]
fn errors_worst_relative_error_reaches_k3() {
    // At n = 64 the largest relative error in the grid is 1 (a clamped-to-
    // zero lower bound), and the k = 3 rows attain it.
    let text = stdout(&["errors", "--n", "64"]);
    let rows = csv_rows(&text);
    let max_err = rows
        .iter()
        .map(|r| r[4].parse::<f64>().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    let k3_max = rows
        .iter()
        .filter(|r| r[1] == "3")
        .map(|r| r[4].parse::<f64>().unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(max_err, k3_max);
    assert_eq!(max_err, 1.0);
}

#[test]
fn verify_sweep_passes() {
    let out = consec(&["verify", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all formulas agree"), "{text}");
}

#[test]
fn verify_rejects_capacity_violations() {
    let out = consec(&["verify", "--max-n", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = consec(&["verify", "--max-n", "5000"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["coeffs", "--n", "12", "--k", "3", "--format", "json"],
        vec!["reliability", "--n", "12", "--k", "3", "--p", "0:0.1:1", "--mode", "both"],
        vec!["errors", "--n", "12"],
    ] {
        assert_eq!(consec(&args).stdout, consec(&args).stdout, "{args:?}");
    }
}

#[test]
fn csv_round_trips_bit_exactly() {
    let text = stdout(&["bounds", "--n", "16", "--k", "3"]);
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_owned();
    let rebuilt: String = std::iter::once(header)
        .chain(text.lines().skip(1).map(|line| {
            line.split(',').collect::<Vec<_>>().join(",")
        }))
        .map(|l| l + "\n")
        .collect();
    assert_eq!(rebuilt, text);
}

#[test]
fn json_is_valid_with_stable_keys() {
    let text = stdout(&["coeffs", "--n", "5", "--k", "2", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[2]["value"], serde_json::json!("1"));
    assert_eq!(rows[2]["region"], serde_json::json!("two_term"));
    // Key order is fixed in the serialized text.
    for line in text.lines().filter(|l| l.trim_start().starts_with('{')) {
        let n_pos = line.find("\"n\"").unwrap();
        let k_pos = line.find("\"k\"").unwrap();
        let i_pos = line.find("\"i\"").unwrap();
        let region_pos = line.find("\"region\"").unwrap();
        let value_pos = line.find("\"value\"").unwrap();
        assert!(n_pos < k_pos && k_pos < i_pos && i_pos < region_pos && region_pos < value_pos);
    }

    let text = stdout(&["reliability", "--n", "8", "--k", "2", "--p", "0.5", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let r = parsed.as_array().unwrap()[0]["r"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&r));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = consec(&[
        "coeffs", "--n", "10", "--k", "4", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let from_file = std::fs::read(&path).unwrap();
    let from_stdout = consec(&["coeffs", "--n", "10", "--k", "4"]).stdout;
    assert_eq!(from_file, from_stdout);
}
