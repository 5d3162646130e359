use std::path::{Path, PathBuf};
use std::process::Command;

use nerve_workbench::cli::CategoryFile;
use serde_json::Value;
use sha2::{Digest, Sha256};

fn sha256_hex(witnesses: &[String]) -> String {
    Sha256::digest(witnesses.join("\n")).iter().map(|b| format!("{b:02x}")).collect()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn workbench(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .env_remove("WORKBENCH_BUDGET")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().expect("exit code"), text)
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> (i32, String) {
    let p = data(file);
    let mut args = vec![cmd, p.to_str().unwrap()];
    args.extend_from_slice(extra);
    workbench(&args)
}

#[test]
fn validate_exit_codes() {
    let (code, out) = run_on("validate", "pt.fincat", &[]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("associativity: ok"));
    let (code, out) = run_on("validate", "missing_composite.fincat", &[]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.trim_start().starts_with("MissingComposite")), "{out}");
    let (code, out) = run_on("validate", "bad_header.fincat", &[]);
    assert_eq!(code, 3);
    assert!(out.contains("line 1"), "{out}");
    assert_eq!(run_on("validate", "no_such_file.fincat", &[]).0, 3);
}

fn counts(path: &Path) -> (usize, usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let file = CategoryFile::parse(&text).unwrap();
    assert_eq!(file.export(), text, "emitted files are canonical");
    let c = file.validate().unwrap();
    (c.num_objects(), c.num_non_identity())
}

#[test]
fn nerve_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("n1");
    let (code, out) = run_on("nerve", "interval.fincat", &["--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(counts(&out_dir.join("total.fincat")), (3, 2));
    let dot = std::fs::read_to_string(out_dir.join("total.dot")).unwrap();
    assert_eq!(dot.matches("style=dashed").count(), 1);
    assert!(dot.contains("label=\"0,1\""));

    // the written package carries its projection and passes N3 as a package
    let (code, out) = workbench(&["axioms", out_dir.join("total.fincat").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("package pi"), "{out}");

    let out_dir = dir.path().join("pt");
    let (code, out) = run_on("nerve", "pt.fincat", &["--mode", "DirFull", "--trunc", "k=2", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(counts(&out_dir.join("total.fincat")), (3, 8));
}

#[test]
fn cyclic_shapes_have_no_exact_nerve() {
    let (code, out) = run_on("nerve", "idempotent.fincat", &["--trunc", "exact"]);
    assert_eq!(code, 1);
    assert!(out.contains("ExactModeUnavailable") && out.contains("cycle: e"), "{out}");
    assert_eq!(run_on("nerve", "idempotent.fincat", &["--mode", "DirFull", "--trunc", "k=2"]).0, 0);
}

#[test]
fn axioms_exit_codes() {
    let (code, out) = run_on("axioms", "chain2.fincat", &["--mode", "DirReduced", "--trunc", "exact"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("N5-right"));
    let (code, out) = run_on("axioms", "interval.fincat", &["--mode", "DirFull", "--trunc", "k=1"]);
    assert_eq!(code, 2, "{out}");
    let (code, out) = run_on("axioms", "corrupted_package.fincat", &[]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("fail         N3"), "{out}");
}

#[test]
fn enlarge_examples() {
    let (code, out) = run_on("enlarge", "interval.fincat", &["--target", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("E({0,1}) over 2: 3 objects"), "{out}");
    let (code, out) = run_on("enlarge", "chain2.fincat", &[]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("E({0,1,2}) over 2: 4 objects"), "{out}");
    let (code, out) = run_on("enlarge", "interval_collapse.fincat", &[]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains(" collapse alpha: {0,1} -> {*}"), "{out}");
}

fn report_of(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all = args.to_vec();
    all.extend_from_slice(&["--report", path.to_str().unwrap()]);
    let (code, _) = workbench(&all);
    (code, serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap())
}

fn check_report(r: &Value) {
    let records = r["records"].as_array().unwrap();
    let s = &r["summary"];
    assert_eq!(s["total"].as_u64().unwrap() as usize, records.len());
    let by = |v: &str| records.iter().filter(|x| x["verdict"] == v).count() as u64;
    assert_eq!(s["pass"].as_u64().unwrap(), by("Pass"));
    assert_eq!(s["fail"].as_u64().unwrap(), by("Fail"));
    assert_eq!(s["inconclusive"].as_u64().unwrap(), by("Inconclusive"));
    let keys: Vec<(String, String)> =
        records.iter().map(|x| (x["check"].as_str().unwrap().into(), x["instance"].as_str().unwrap().into())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for x in records {
        let w: Vec<String> = x["witnesses"].as_array().unwrap().iter().map(|w| w.as_str().unwrap().into()).collect();
        assert_eq!(x["witness_digest"].as_str().unwrap(), sha256_hex(&w));
        if x["verdict"] == "Fail" {
            assert!(!w.is_empty(), "{x}");
        }
    }
}

#[test]
fn missing_colimit_is_a_failure_with_a_witness() {
    let target = data("v.fincat");
    let (code, r) = report_of(&["enlarge", data("interval.fincat").to_str().unwrap(), "--target", target.to_str().unwrap()]);
    assert_eq!(code, 1);
    check_report(&r);
    let fails: Vec<&Value> = r["records"].as_array().unwrap().iter().filter(|x| x["verdict"] == "Fail").collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|x| x["witnesses"][0].as_str().unwrap().starts_with("MissingColimit")), "{fails:?}");
}

#[test]
fn axiom_reports_are_well_formed() {
    let (code, r) = report_of(&["axioms", data("chain2.fincat").to_str().unwrap(), "--mode", "InvReduced"]);
    assert_eq!(code, 0);
    check_report(&r);
    let (code, r) = report_of(&["axioms", data("corrupted_package.fincat").to_str().unwrap()]);
    assert_eq!(code, 1);
    check_report(&r);
}

#[test]
fn tiny_budgets_are_inconclusive() {
    let (code, out) = run_on("enlarge", "interval.fincat", &["--budget", "3"]);
    assert_eq!(code, 2, "{out}");
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["enlarge", data("interval.fincat").to_str().unwrap()])
        .env("WORKBENCH_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run_on("axioms", "interval.fincat", &["--mode", "Sideways"]).0, 3);
    assert_eq!(run_on("axioms", "interval.fincat", &["--trunc", "k=x"]).0, 3);
    assert_eq!(run_on("enlarge", "interval.fincat", &["--target", "[x]"]).0, 3);
    assert_eq!(workbench(&["frobnicate"]).0, 3);
}

#[test]
fn suite_passes() {
    let (code, r) = report_of(&["suite"]);
    assert_eq!(code, 0, "{r}");
    check_report(&r);
    assert_eq!(r["summary"]["pass"], 9);
}
