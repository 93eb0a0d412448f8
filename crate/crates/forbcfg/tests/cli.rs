//! End-to-end checks of the command-line contract: exit codes, JSON on
//! stdout, cache behavior, and the CSV side channel.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forbcfg"))
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn gen(spec: &str) -> String {
    let output = bin().args(["gen", spec]).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "gen {spec} failed");
    String::from_utf8(output.stdout).unwrap()
}

#[test]
fn contains_exit_codes_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.mat", &gen("T(2,0,1)"));
    let row = write(dir.path(), "row.mat", &gen("[[0,1]]"));

    let hit = bin().args(["contains"]).arg(&t).arg(&row).output().unwrap();
    assert_eq!(hit.status.code(), Some(0));
    let report = json(&hit);
    assert_eq!(report["contained"], serde_json::json!(true));
    assert_eq!(report["witness"]["rows"], serde_json::json!([1]));

    // a pattern over a wider alphabet is a plain negative
    let all4 = write(dir.path(), "all4.mat", &gen("allcols(4,2)"));
    let i21 = write(dir.path(), "i21.mat", &gen("I(2,2,1)"));
    let miss = bin()
        .args(["contains"])
        .arg(&all4)
        .arg(&i21)
        .output()
        .unwrap();
    assert_eq!(miss.status.code(), Some(1));
    assert_eq!(json(&miss)["contained"], serde_json::json!(false));

    // missing file is a usage error
    let bad = bin()
        .args(["contains", "nope.mat", "nope.mat"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn forb_reports_and_budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let exact = bin()
        .args(["forb", "--m", "4", "--r", "2", "--family", "Fabcd(0,1,1,0)"])
        .env("FORB_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(exact.status.code(), Some(0));
    let report = json(&exact);
    assert_eq!(report["value"], serde_json::json!(5));
    assert_eq!(report["exact"], serde_json::json!(true));
    assert_eq!(report["k"], serde_json::Value::Null);

    // ones-count restriction
    let weighted = bin()
        .args([
            "forb",
            "--m",
            "4",
            "--r",
            "2",
            "--family",
            "",
            "--k",
            "2",
            "--no-cache",
        ])
        .output()
        .unwrap();
    assert_eq!(json(&weighted)["value"], serde_json::json!(6));

    // an exhausted budget must not claim exactness: exit 3
    let truncated = bin()
        .args([
            "forb",
            "--m",
            "4",
            "--r",
            "2",
            "--family",
            "Fabcd(0,1,1,0)",
            "--budget-nodes",
            "2",
            "--no-cache",
        ])
        .output()
        .unwrap();
    assert_eq!(truncated.status.code(), Some(3));
    let report = json(&truncated);
    assert_eq!(report["exact"], serde_json::json!(false));

    // bad family expression: usage error
    let bad = bin()
        .args(["forb", "--m", "3", "--r", "2", "--family", "Q(1)"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn second_forb_run_hits_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let args = ["forb", "--m", "3", "--r", "2", "--family", "Tfam(2,2)"];
    let first = bin().args(args).env("FORB_CACHE", &cache).output().unwrap();
    let second = bin().args(args).env("FORB_CACHE", &cache).output().unwrap();
    let (a, b) = (json(&first), json(&second));
    assert_eq!(a["value"], b["value"]);
    assert_eq!(a["extremal"], b["extremal"]);
    assert!(a["nodes"].as_u64().unwrap() > 0);
    assert_eq!(b["nodes"].as_u64().unwrap(), 0);
    // the cache file holds exactly one record
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(lines.lines().count(), 1);
}

#[test]
fn growth_emits_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let csv_path = dir.path().join("points.csv");
    let output = bin()
        .args([
            "growth",
            "--family",
            "Fabcd(0,1,1,0)",
            "--r",
            "2",
            "--m-from",
            "1",
            "--m-to",
            "5",
            "--claim",
            "i2",
            "--csv",
        ])
        .arg(&csv_path)
        .env("FORB_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report = json(&output);
    assert_eq!(report["expected"]["exponent"], serde_json::json!(1.0));
    let values: Vec<u64> = report["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["value"].as_u64().unwrap())
        .collect();
    assert_eq!(values, vec![2, 3, 4, 5, 6]);

    // CSV round-trips to the same points
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let parsed = forbcfg::growth::GrowthReport::parse_csv(&csv).unwrap();
    assert_eq!(parsed.len(), 5);
    for (point, expected) in parsed.iter().zip(&values) {
        assert_eq!(point.value as u64, *expected);
        assert!(point.exact);
    }

    // a second growth run over the same range recomputes nothing
    let again = bin()
        .args([
            "growth",
            "--family",
            "Fabcd(0,1,1,0)",
            "--r",
            "2",
            "--m-from",
            "1",
            "--m-to",
            "5",
        ])
        .env("FORB_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn gen_prints_matrices_and_families() {
    let single = gen("K2");
    let parsed = forbcfg::matrix::RMatrix::parse(&single).unwrap();
    assert_eq!(parsed.col_count(), 4);

    let family = gen("Tfam(2,3)-Tfam(2,2)");
    let members = forbcfg::matrix::RMatrix::parse_stream(&family).unwrap();
    assert_eq!(members.len(), 6);
    // every member keeps a symbol outside the binary world
    for member in &members {
        assert!(member.cols().any(|col| col.iter().any(|&s| s >= 2)));
    }

    let bad = bin().args(["gen", "Nope(1,2)"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_reports_the_counting_inequality() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.mat", "2 2 3\n01\n00\n");
    let output = bin()
        .args(["decompose", "--row", "0"])
        .arg(&a)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report = json(&output);
    assert_eq!(report["total_columns"], serde_json::json!(2));
    assert_eq!(report["base_columns"], serde_json::json!(1));
    assert_eq!(report["repeat_columns"], serde_json::json!(1));
    assert_eq!(report["inequality_holds"], serde_json::json!(true));
    // the repeated column sits under symbols 0 and 1
    let repeats = report["repeats"].as_array().unwrap();
    let pair01 = repeats
        .iter()
        .find(|p| p["symbols"] == serde_json::json!([0, 1]))
        .unwrap();
    assert_eq!(pair01["columns"], serde_json::json!(1));
    assert_eq!(pair01["appears_in_input"], serde_json::json!(true));

    // non-simple input is rejected
    let bad = write(dir.path(), "bad.mat", "1 2 2\n00\n");
    let rejected = bin()
        .args(["decompose", "--row", "0"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(rejected.status.code(), Some(2));
}

#[test]
fn extract_classifies_plants() {
    let dir = tempfile::tempdir().unwrap();
    let member_plant = write(dir.path(), "m.mat", &gen("T3(8,2,1,1)"));
    let output = bin()
        .args(["extract", "--x", "2", "--ell", "2", "--s", "2"])
        .arg(&member_plant)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report = json(&output);
    assert_eq!(report["outcome"], serde_json::json!("member"));
    let config = forbcfg::matrix::RMatrix::parse(report["config"].as_str().unwrap()).unwrap();
    assert_eq!(config.row_count(), 2);

    let exception_plant = write(dir.path(), "e.mat", &gen("T3(8,0,2,1)"));
    let output = bin()
        .args(["extract", "--x", "0", "--ell", "2", "--s", "2"])
        .arg(&exception_plant)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(json(&output)["outcome"], serde_json::json!("exception"));

    // a template too small for the target reports honestly with exit 1
    let tiny = write(dir.path(), "tiny.mat", &gen("T3(2,2,1,1)"));
    let output = bin()
        .args(["extract", "--x", "2", "--ell", "3", "--s", "2"])
        .arg(&tiny)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(json(&output)["outcome"], serde_json::json!("too-small"));
}

#[test]
fn usage_errors_exit_two() {
    let unknown = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let missing = bin().args(["forb", "--m", "3"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let help = bin().args(["--help"]).output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
