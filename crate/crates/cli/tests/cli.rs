use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crossrc"));
    c.env_remove("CROSSRC_OUTPUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn build_z2_summary() {
    let out = run(&["build", "--group", "Z2", "--eta", "1/4", "--stages", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["d"], serde_json::json!(["3", "11", "131"]));
    assert_eq!(v["fiber_dims"], serde_json::json!(["10", "130", "17290"]));
    assert_eq!(v["stages"][3]["materialized"], false);
    assert_valid("build.schema.json", &v);
}

#[test]
fn certificate_z2() {
    let out = run(&["certificate", "--group", "Z2", "--eta", "1/4", "--lambda", "1/5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["n"], 2);
    assert_eq!(v["M"], "92");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert_valid("certificate.schema.json", &v);
}

#[test]
fn verify_s3_passes() {
    let out = run(&["verify", "--group", "S3", "--eta", "1/12", "--stages", "1", "--seed", "7", "--trials", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    assert_valid("verify.schema.json", &v);
}

#[test]
fn verify_lists_skipped_stages() {
    let out = run(&["verify", "--eta", "1/4", "--stages", "3", "--seed", "1", "--trials", "1", "--matrix-cap", "200"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let eq = v["verdicts"].as_array().unwrap().iter().find(|x| x["name"] == "equivariance").unwrap();
    assert!(eq["reason"].as_str().unwrap().contains("exceeds cap 200"));
}

#[test]
fn verify_requires_seed() {
    let out = run(&["verify", "--eta", "1/4"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
    assert_valid("error.schema.json", &err);
}

#[test]
fn config_errors_are_machine_readable() {
    for (args, kind) in [
        (vec!["build", "--eta", "1/2"], "out_of_range"),
        (vec!["build", "--eta", "0.25"], "invalid_rational"),
        (vec!["build", "--group", "Z1", "--eta", "1/4"], "group_spec"),
        (vec!["build", "--eta", "1/4", "--matrix-cap", "4"], "out_of_range"),
        (vec!["certificate", "--eta", "1/4", "--lambda", "1/4"], "out_of_range"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"]["kind"], kind, "{args:?}");
    }
}

#[test]
fn rc_table_csv_header_and_schema() {
    let out = run(&["rc-table", "--eta", "1/4", "--stages", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("stage,dimX,fiber,bound,gap"));
    assert_eq!(lines.next(), Some("1,6,10,3/10,1/20"));
    assert_eq!(lines.nth(1), Some("3,8646,17290,4323/17290,1/34580"));

    let out = run(&["rc-table", "--eta", "1/4", "--stages", "4", "--decimals"]);
    let v = stdout_json(&out);
    assert_eq!(v["first_stage_within_tolerance"], 4);
    assert_valid("rc-table.schema.json", &v);
}

#[test]
fn crossed_report_schema() {
    let out = run(&["crossed-report", "--group", "Z2", "--eta", "1/4", "--stage", "1", "--samples", "5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["report"]["fixed_point_dimension"], 50);
    assert_eq!(v["expected_fixed_point_dimension"], 50);
    assert_valid("crossed-report.schema.json", &v);
}

fn write_twice(args: &[&str], dir: &Path) -> (Vec<u8>, Vec<u8>) {
    let read = |name: &str| {
        let path: PathBuf = dir.join(name);
        let mut full: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        full.extend(["--output", &p]);
        assert!(run(&full).status.success());
        std::fs::read(&path).unwrap()
    };
    (read("a"), read("b"))
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["verify", "--group", "Z3", "--eta", "1/6", "--stages", "1", "--seed", "3", "--trials", "2"],
        vec!["build", "--group", "S3", "--eta", "1/12", "--stages", "2", "--seed", "5"],
        vec!["rc-table", "--group", "Q8", "--eta", "1/16", "--format", "csv", "--decimals"],
        vec!["crossed-report", "--group", "Z2xZ2", "--eta", "1/8", "--seed", "9", "--samples", "3"],
    ] {
        let (a, b) = write_twice(&args, dir.path());
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("CROSSRC_OUTPUT_DIR", dir.path())
        .args(["rc-table", "--eta", "1/4", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("rc-table.csv")).unwrap();
    assert!(text.starts_with("stage,dimX,fiber,bound,gap\n"));
}
