use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oracleid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oracleid"))
        .args(args)
        .env_remove("ORACLEID_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON value per line"))
        .collect()
}

fn summary(lines: &[Value]) -> &Value {
    &lines.last().expect("summary line")["summary"]
}

fn write_class(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_families() {
    let out = oracleid(&["gen", "--kind", "hamming1", "--n", "3"]);
    assert!(out.status.success());
    let class: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(class["members"].as_array().unwrap().len(), 3);

    let out = oracleid(&["gen", "--kind", "cube", "--n", "2"]);
    let class: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(class["members"].as_array().unwrap().len(), 4);

    let missing = oracleid(&["gen", "--kind", "random", "--n", "8"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn gen_random_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("c{i}.json"))).collect();
    for p in &paths {
        let out = oracleid(&[
            "gen", "--kind", "random", "--n", "8", "--m", "20", "--seed", "7", "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read(&paths[0]).unwrap();
    assert_eq!(a, fs::read(&paths[1]).unwrap());
    let other = oracleid(&["gen", "--kind", "random", "--n", "8", "--m", "20", "--seed", "8"]);
    assert_ne!(a, other.stdout);
}

#[test]
fn run_all_ideal_on_hamming_one() {
    let out = oracleid(&["run", "--kind", "hamming1", "--n", "3", "--all"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert!(lines[0]["config"].is_object());
    let rows = &lines[1..lines.len() - 1];
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row["success"], true);
        assert_eq!(row["trace"]["identified"], row["x"]);
    }
    assert_eq!(summary(&lines)["success_rate"], 1.0);
}

#[test]
fn run_quantum_on_cube_two() {
    let args = [
        "run", "--kind", "cube", "--n", "2", "--x", "10", "--engine", "quantum", "--trials", "200",
        "--seed", "3",
    ];
    let out = oracleid(&args);
    assert!(out.status.success());
    let lines = json_lines(&out);
    let s = summary(&lines);
    assert!(s["success_rate"].as_f64().unwrap() >= 0.60, "{s}");
    assert!(s["max_norm_drift"].as_f64().unwrap() < 1e-9);
    // Same seed, same bytes, whatever the thread count.
    let again = oracleid(&[&args[..], &["--jobs", "1"]].concat());
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .skip(1)
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&out), strip(&again));
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_oracleid"));
        cmd.args(["gen", "--kind", "random", "--n", "10", "--m", "5"]);
        cmd.env_remove("ORACLEID_SEED");
        if let Some(v) = env {
            cmd.env("ORACLEID_SEED", v);
        }
        if let Some(v) = flag {
            cmd.args(["--seed", v]);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("11"), None), run(None, Some("11")));
    assert_ne!(run(Some("11"), None), run(None, None));
}

#[test]
fn singleton_class_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let class = write_class(dir.path(), "one.json", r#"{"n":4,"members":["0110"]}"#);
    let out = oracleid(&["run", "--class", &class, "--all"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[1]["trace"]["r"], 0);
}

#[test]
fn promise_violation_is_a_row_not_a_crash() {
    let out = oracleid(&["run", "--kind", "hamming1", "--n", "3", "--x", "111", "--min-success-rate", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    // Outside the promise the run may end on the wrong member or report
    // an emptied candidate set; either way the row is a failure.
    assert_eq!(lines[1]["success"], false);
    assert_eq!(summary(&lines)["passed"], false);

    let out = oracleid(&["run", "--kind", "cube", "--n", "2", "--x", "101"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = oracleid(&["verify", "--suite", "ordering", "--n", "4"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[1]["details"]["sets_checked"], 65535);

    let dir = tempfile::tempdir().unwrap();
    let class = write_class(dir.path(), "h1.json", r#"{"n":3,"members":["001","010","100"]}"#);
    let out = oracleid(&["verify", "--suite", "sdp", "--class", &class]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert!(lines[1]["details"]["max_violation"].as_f64().unwrap() < 1e-9);

    let out = oracleid(&["verify", "--suite", "lp", "--n", "8", "--m", "3"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines[1]["details"]["cells"], 1);

    let out = oracleid(&["verify", "--suite", "sdp", "--n", "3", "--dump"]);
    assert!(out.status.success());
    assert!(json_lines(&out)[1]["details"]["solution"].is_object());
}

#[test]
fn bad_inputs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let class = write_class(dir.path(), "bad.json", r#"{"n":3,"members":["001","001"]}"#);
    let out = oracleid(&["verify", "--suite", "sdp", "--class", &class]);
    assert_eq!(out.status.code(), Some(2));
    let out = oracleid(&["verify", "--tolerance", "-1"]);
    assert!(!out.status.success());
}

#[test]
fn bounds_grid() {
    let out = oracleid(&["bounds", "--n", "4,8", "--m", "4,16", "--check-chain"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["M", "N", "brute_force_C", "closed_form_C", "lp_primal", "lp_dual", "k_lower", "lower_value"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        let brute: f64 = r[2].parse().unwrap();
        let primal: f64 = r[4].parse().unwrap();
        let dual: f64 = r[5].parse().unwrap();
        assert!(brute <= primal && primal <= dual);
    }

    let out = oracleid(&["bounds", "--n", "6,10", "--full-cube"]);
    let text = stdout(&out);
    for (line, n) in text.lines().skip(1).zip([6.0, 10.0]) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[3].parse::<f64>().unwrap(), n);
    }

    let out = oracleid(&["bounds"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
}
