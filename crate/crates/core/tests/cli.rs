use std::path::PathBuf;
use std::process::{Command, Output};

use linkcheck::cli::{parse_instance, REPORT_SCHEMA};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn linkcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_file(name: &str, extra: &[&str]) -> Output {
    let path = corpus(name);
    let mut args = vec!["run", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    linkcheck(&args)
}

const PASSING: [&str; 5] = ["flagship.link", "r4.link", "plane.link", "space.link", "hypotheses.link"];

#[test]
fn corpus_exit_codes() {
    for f in PASSING {
        let out = run_file(f, &[]);
        assert_eq!(out.status.code(), Some(0), "{f}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(run_file("failing.link", &[]).status.code(), Some(1));
    let bad = run_file("malformed.link", &[]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("3:15"));
    assert_eq!(linkcheck(&["run", "missing-file.link"]).status.code(), Some(2));
    assert_eq!(linkcheck(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn resource_cap_exits_three() {
    let out = run_file("flagship.link", &["--degree-cap", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_validate_against_schema() {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for f in PASSING.iter().chain(&["failing.link"]) {
        let out = run_file(f, &["--format", "json"]);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(validator.is_valid(&report), "{f}");
        let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["version", "digest", "characteristic", "verdicts"]);
    }
}

#[test]
fn markdown_has_one_section_per_verdict() {
    let json: Value = serde_json::from_slice(&run_file("plane.link", &[]).stdout).unwrap();
    let md = String::from_utf8(run_file("plane.link", &["--format", "md"]).stdout).unwrap();
    let n = json["verdicts"].as_array().unwrap().len();
    assert_eq!(md.lines().filter(|l| l.starts_with("## ")).count(), n);
}

#[test]
fn reports_are_deterministic() {
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        for x in v["verdicts"].as_array_mut().unwrap() {
            x["millis"] = Value::Null;
        }
        v
    };
    let a = strip(run_file("r4.link", &[]));
    let b = strip(run_file("r4.link", &["--jobs", "4"]));
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.md");
    let out = run_file("flagship.link", &["--format", "md", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(target).unwrap().starts_with("# linkcheck report"));
}

#[test]
fn compute_subcommand() {
    let out = linkcheck(&["compute", "colon", "--ring", "QQ[x,y] grevlex", "--ideal", "x*y", "--by", "x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "y\n");
    let cd = linkcheck(&[
        "compute", "cd", "--ring", "QQ[x1,x2,x3,x4]", "--ideal", "x1*x3, x1*x4, x2*x3, x2*x4",
    ]);
    assert_eq!(String::from_utf8_lossy(&cd.stdout), "3\n");
    let grade = linkcheck(&["compute", "grade", "--ring", "QQ[x,y]", "--ideal", "x, y", "--module", "x*y"]);
    assert_eq!(String::from_utf8_lossy(&grade.stdout), "1\n");
    let bad = linkcheck(&["compute", "gb", "--ring", "QQ[x,y]", "--ideal", "x +"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn gen_is_byte_identical_and_reparses() {
    let args = ["gen", "--seed", "7", "--profile", "geometric-links", "--count", "3", "--vars", "4"];
    let a = linkcheck(&args);
    let b = linkcheck(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let file = parse_instance(&text).unwrap();
    assert_eq!(file.checks.len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.link");
    std::fs::write(&path, &text).unwrap();
    assert_eq!(linkcheck(&["run", path.to_str().unwrap()]).status.code(), Some(0));

    let bad = linkcheck(&["gen", "--seed", "1", "--profile", "geometric-links", "--count", "1", "--vars", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corpus_round_trips() {
    for f in PASSING.iter().chain(&["failing.link"]) {
        let text = std::fs::read_to_string(corpus(f)).unwrap();
        let once = parse_instance(&text).unwrap();
        assert_eq!(parse_instance(&once.to_string()).unwrap(), once, "{f}");
    }
}
