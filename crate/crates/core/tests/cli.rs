//! The `even-christoffel` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_even-christoffel"));
    cmd.env_remove("CHRISTOFFEL_PRECISION_BITS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strip_timestamp(mut v: Value) -> Value {
    v["meta"]["timestamp"] = Value::Null;
    v
}

#[test]
fn table_runs_are_deterministic() {
    let a = run(&["--table", "2"]);
    let b = run(&["--table", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_timestamp(json(&a)), strip_timestamp(json(&b)));
    let v = json(&a);
    assert_eq!(v["summary"]["rows"], 20);
    assert_eq!(v["rows"][0]["inputs"]["table"], "2");
    assert_eq!(v["meta"]["precision_bits"], "256");
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    let j = json(&run(&["--decompose", "--family", "mp", "--lambda", "0.5", "--phi", "0.9", "--n", "6", "--m", "3", "--k", "2"]));
    let out = run(&[
        "--decompose", "--family", "mp", "--lambda", "0.5", "--phi", "0.9", "--n", "6", "--m", "3", "--k", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(records.len(), rows.len());
    for (record, row) in records.iter().zip(rows) {
        for (name, value) in headers.iter().zip(record.iter()) {
            let expected = match name.split_once('.') {
                Some((section, key)) => row[section][key].as_str().unwrap_or(""),
                None => row[name].as_str().unwrap(),
            };
            assert_eq!(value, expected, "column {name}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--table", "1"]).status.code(), Some(0), "flagged cells do not fail a run");
    // two printed x_min cells in table 3 disagree with the recomputed zeros
    let t3 = run(&["--table", "3"]);
    assert_eq!(t3.status.code(), Some(1));
    assert_eq!(json(&t3)["summary"]["fail"], 2);
    assert_eq!(run(&["--table", "4"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--verify", "--family", "pj", "--a", "-5", "--b", "1", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["--grid", "--precision-bits", "16"]).status.code(), Some(2));
    assert_eq!(run(&["--decompose", "--family", "mp", "--lambda", "0.5"]).status.code(), Some(2));
}

#[test]
fn precision_from_environment() {
    let out = bin().args(["--table", "2"]).env("CHRISTOFFEL_PRECISION_BITS", "128").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["meta"]["precision_bits"], "128");
    // the flag wins over the environment
    let out = bin()
        .args(["--table", "2", "--precision-bits", "192"])
        .env("CHRISTOFFEL_PRECISION_BITS", "128")
        .output()
        .unwrap();
    assert_eq!(json(&out)["meta"]["precision_bits"], "192");
}

#[test]
fn writes_to_file() {
    let dir = std::env::temp_dir().join(format!("even-christoffel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let out = run(&["--grid", "--n", "5", "--m", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("inputs.family,inputs.lambda,inputs.phi,inputs.n,inputs.m,inputs.k,computed.deg_a"));
    assert!(header.ends_with(",verdict"));
    assert_eq!(lines.count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_with_small_budget() {
    let out = run(&["--verify", "--family", "mp", "--lambda", "0.5", "--phi", "0.9", "--draws", "3", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["inputs"]["family"] == "mp"));
}
