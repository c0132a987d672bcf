use std::process::Command;

use repring_cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("repring").chain(args.iter().copied()));
    let v = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, v)
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("repring-cli-{}-{name}", std::process::id()))
}

#[test]
fn burnside_snf_of_c2() {
    let (code, v) = json(&["lattice", "--ring", "B", "--group", "C2", "--emit", "snf"]);
    assert_eq!(code, 0);
    assert_eq!(v["snf"], serde_json::json!([1, 2]));
    assert_eq!(v["version"], repring::VERSION);
}

#[test]
fn character_units_of_s3() {
    let (code, v) = json(&["units", "--ring", "RK", "--group", "S3"]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 4);
    assert!(v["units"].as_array().unwrap().iter().all(|u| u["orthogonal"] == true));
}

#[test]
fn burnside_units_of_trivial_group() {
    let out = run(["repring", "units", "--ring", "B", "--group", "1", "--format", "tsv"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "unit\torthogonal\t[0]\n0\ttrue\t1\n1\ttrue\t-1\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(["repring", "units", "--ring", "T", "--group", "S3"]).code, 2);
    assert_eq!(run(["repring", "units", "--ring", "X", "--group", "S3"]).code, 2);
    assert_eq!(run(["repring", "lattice", "--ring", "B", "--group", "nope"]).code, 2);
    assert_eq!(run(["repring", "lattice", "--ring", "T", "--group", "C2", "--p", "4"]).code, 2);
    assert_eq!(run(["repring", "--cap", "4", "lattice", "--ring", "B", "--group", "S3"]).code, 2);
    assert_eq!(run(["repring", "teninduce", "--ring", "B", "--biset", "ind C2<=C4"]).code, 2);
}

#[test]
fn failed_degree_check_exits_1() {
    let (code, v) = json(&["algdeg", "--map", "ind C2<=S3", "--degree", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"]["vanishes_above"], false);
    let (code, v) = json(&["algdeg", "--map", "ind C2<=S3", "--ring", "T", "--p", "3", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["label"], "consistent_with_degree_n, refuted_below_n");
    assert_eq!(v["expected_degree"], 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["repring", "algdeg", "--map", "res C2<=S3 * ind C2<=S3", "--ring", "T", "--p", "2", "--seed", "9"];
    assert_eq!(run(args), run(args));
}

#[test]
fn diagram_check_passes() {
    for (biset, p) in [("ind C2<=C4", "2"), ("ind C2<=S3", "3")] {
        let (code, v) = json(&["diagram-check", "--biset", biset, "--p", p]);
        assert_eq!(code, 0, "{biset}");
        let faces = v["faces"].as_array().unwrap();
        assert!(faces.len() > 10);
        assert!(faces.iter().all(|f| f["pass"] == true));
    }
    let (code, v) = json(&["diagram-check", "--group", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn teninduce_reads_its_own_output() {
    let (code, v) = json(&["teninduce", "--ring", "T", "--biset", "ind C2<=S3", "--p", "3", "--generator", "1"]);
    assert_eq!(code, 0);
    let path = temp_path("element.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, back) = json(&["teninduce", "--ring", "T", "--biset", "res C2<=S3", "--p", "3", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(back["input"]["ghost"], v["output"]["ghost"]);
    assert_eq!(back["target_ring"]["group"], "C2");
}

#[test]
fn group_files() {
    let path = temp_path("s3.grp");
    std::fs::write(&path, "name: S3\ndegree: 3\n(1 2 3)\n(1 2)\n").unwrap();
    let (code, v) = json(&["units", "--ring", "RK", "--group", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["order"], 4);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_repring"))
        .args(["lattice", "--ring", "B", "--group", "S3", "--emit", "rank"])
        .env("REPRING_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_repring"))
        .args(["lattice", "--ring", "B", "--group", "S3", "--emit", "rank", "--format", "text"])
        .env("REPRING_CAP", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "rank\n4\n");
}
