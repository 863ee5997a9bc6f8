use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn formality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formality"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(name);
    let mut all = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--out", &p]);
    let out = formality(&all);
    (code(&out), fs::read_to_string(&path).unwrap_or_default())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

/// Data rows of a CSV output, skipping the config line.
fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    let body: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn graphs_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = run_to(dir.path(), "g11.json", &["graphs", "--n", "1", "--m", "1"]);
    assert_eq!(c, 0);
    assert_eq!(json(&text)["graphs"].as_array().unwrap().len(), 1);
    let (c, text) = run_to(dir.path(), "g22.json", &["graphs", "--n", "2", "--m", "2"]);
    assert_eq!(c, 0);
    let doc = json(&text);
    assert_eq!(doc["graphs"].as_array().unwrap().len(), 4);
    assert_eq!(doc["config"]["n"], 2);
    assert_eq!(doc["graphs"][3]["id"], 3);
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let out = formality(&["graphs", "--n", "0", "--m", "3"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&formality(&["graphs", "--n", "1"])), 2);
    assert_eq!(code(&formality(&["strata", "--kind", "cn", "--n", "1"])), 2);
    assert_eq!(code(&formality(&["verify", "--degrees", "1,1", "--n", "3"])), 2);
    assert_eq!(
        code(&formality(&["weights", "--n", "1", "--m", "1", "--phi", "gauss"])),
        2
    );
}

#[test]
fn weight_tables() {
    let dir = tempfile::tempdir().unwrap();
    for (n, m) in [("1", "2"), ("2", "1")] {
        let (c, text) = run_to(dir.path(), "w.json", &["weights", "--n", n, "--m", m]);
        assert_eq!(c, 0);
        let rows = json(&text)["weights"].as_array().unwrap().clone();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["value"], "1/2");
    }
    let (_, text) = run_to(dir.path(), "w22.json", &["weights", "--n", "2", "--m", "2"]);
    let rows = json(&text)["weights"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["mode"] == "exact"));
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["weights", "--n", "2", "--m", "3", "--samples", "20000", "--seed", "4"];
    let (_, j) = run_to(dir.path(), "w.json", &[&args[..], &["--format", "json"]].concat());
    let (_, c) = run_to(dir.path(), "w.csv", &[&args[..], &["--format", "csv"]].concat());
    let rows = json(&j)["weights"].as_array().unwrap().clone();
    let records = csv_rows(&c);
    assert!(c.starts_with("# config: {"));
    assert_eq!(rows.len(), records.len());
    assert!(rows.iter().any(|r| r["mode"] == "mc"));
    let header = csv::Reader::from_reader(c.lines().skip(1).collect::<Vec<_>>().join("\n").as_bytes())
        .headers()
        .unwrap()
        .clone();
    for (row, rec) in rows.iter().zip(&records) {
        for (k, field) in header.iter().zip(rec.iter()) {
            let v = &row[k];
            let same = match v {
                Value::String(s) => s == field,
                Value::Number(x) => x.as_f64().unwrap() == field.parse::<f64>().unwrap(),
                other => panic!("unexpected {other}"),
            };
            assert!(same, "{k}: {v} vs {field}");
        }
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = run_to(
        dir.path(),
        "v.json",
        &["verify", "--n", "2", "--degrees", "1,1", "--trials", "5"],
    );
    assert_eq!(c, 0);
    let doc = json(&text);
    assert_eq!(doc["report"]["pass"], true);
    assert_eq!(doc["report"]["mode"], "exact");
    assert_eq!(doc["config"]["signs"], "koszul");

    let (c, _) = run_to(dir.path(), "v1.json", &["verify", "--degrees", "2", "--trials", "5"]);
    assert_eq!(c, 0);

    let out = formality(&[
        "verify",
        "--degrees",
        "1,1",
        "--trials",
        "5",
        "--signs",
        "flip-cup",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("max residual"));
}

#[test]
fn strata_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = run_to(
        dir.path(),
        "s.json",
        &["strata", "--kind", "cnm", "--n", "1", "--m", "1"],
    );
    assert_eq!(c, 0);
    assert_eq!(json(&text)["strata"].as_array().unwrap().len(), 2);
    let (_, text) = run_to(dir.path(), "c4.json", &["strata", "--kind", "cn", "--n", "4"]);
    assert_eq!(json(&text)["strata"].as_array().unwrap().len(), 5);
    let (c, text) = run_to(dir.path(), "c2.json", &["strata", "--kind", "cn", "--n", "2"]);
    assert_eq!(c, 0);
    assert!(json(&text)["strata"].as_array().unwrap().is_empty());
    let (_, text) = run_to(
        dir.path(),
        "s21.csv",
        &["strata", "--kind", "cnm", "--n", "2", "--m", "1", "--format", "csv"],
    );
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert!(rows
        .iter()
        .all(|r| r[3].split('+').map(|d| d.parse::<usize>().unwrap()).sum::<usize>() == 1));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &[
            "weights",
            "--n",
            "2",
            "--m",
            "3",
            "--samples",
            "30000",
            "--seed",
            "9",
            "--phi",
            "epanechnikov",
        ],
        &[
            "verify",
            "--degrees",
            "2,2",
            "--trials",
            "2",
            "--samples",
            "30000",
            "--seed",
            "2",
        ],
        &["strata", "--kind", "cnm", "--n", "2", "--m", "2", "--format", "csv"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let name = format!("run{i}.out");
        let (_, first) = run_to(dir.path(), &name, args);
        assert!(!first.is_empty());
        let copy = dir.path().join(format!("copy{i}"));
        fs::write(&copy, &first).unwrap();
        fs::remove_file(dir.path().join(&name)).unwrap();
        // the recorded --out path is reused
        let out = formality(&["rerun", copy.to_str().unwrap()]);
        assert!(out.status.success() || code(&out) == 1);
        assert_eq!(fs::read_to_string(dir.path().join(&name)).unwrap(), first, "{args:?}");
    }
}
