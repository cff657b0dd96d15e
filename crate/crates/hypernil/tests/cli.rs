//! End-to-end tests of the hypernil binary: exit codes, report files,
//! CSV emission and the iteration-cap environment variable.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypernil"))
}

fn catalog(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("catalog")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn validate_kodaira_passes() {
    let out = run(&["validate", catalog("kodaira").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS  jacobi"));
    assert!(text.contains("PASS  integrable[I]"));
    assert!(text.contains("abelian[I]"));
}

#[test]
fn validate_rejects_non_nilpotent_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{
            "name": "bad",
            "algebra": {
                "dim": 3,
                "brackets": [
                    {"i": 0, "j": 1, "coeffs": {"2": "1"}},
                    {"i": 1, "j": 2, "coeffs": {"0": "1"}}
                ]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL  nilpotent"));
}

#[test]
fn malformed_rational_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "bad", "algebra": {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"0": "1/0"}}]}}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn albanese_report_embeds_hash_and_dims() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let input = catalog("kodaira");
    let out = run(&[
        "albanese",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("torus complex dim 1"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["command"], "albanese");
    assert_eq!(report["report"]["torus_complex_dim"], 1);
    assert_eq!(report["report"]["kernel_dim"], 2);
    let sha = report["input"]["sha256"].as_str().unwrap();
    assert_eq!(sha.len(), 64);
    // hash matches the file content
    use sha2::Digest;
    let expected = hex::encode(sha2::Sha256::digest(std::fs::read(&input).unwrap()));
    assert_eq!(sha, expected);
}

#[test]
fn series_summary_mode_omits_bases() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("series.json");
    let out = run(&[
        "series",
        catalog("free23_5").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--summary",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["report"]["steps"], 3);
    assert!(report["report"]["lower"]["term_dims"].is_array());
    assert!(report["report"]["lower"].get("terms").is_none());
}

#[test]
fn tower_uses_triple_when_present() {
    let out = run(&["tower", catalog("example8").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2 levels"));
    assert!(stdout(&out).contains("structures preserved: true"));

    let out = run(&["tower", catalog("iwasawa6").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "non-abelian structure refused");
}

#[test]
fn scan_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("scan.json");
    let out = run(&[
        "scan",
        catalog("example8").to_str().unwrap(),
        "--grid",
        "2",
        "--out",
        out_path.to_str().unwrap(),
        "--csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let samples = report["report"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 31); // 5*5 + 6 axis points
    assert_eq!(report["report"]["exceptional"].as_array().unwrap().len(), 0);

    let csv = std::fs::read_to_string(dir.path().join("scan.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "u,v,a,b,c,kernel_dim,equal");
    assert_eq!(csv.lines().count(), 32);
    // axis rows have empty u, v
    assert!(csv.lines().any(|l| l.starts_with(",,")));
}

#[test]
fn scan_requires_a_triple() {
    let out = run(&["scan", catalog("kodaira").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witness_refuses_generic_points() {
    let out = run(&[
        "witness",
        catalog("example8").to_str().unwrap(),
        "--point",
        "1,0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "scan is generic everywhere here"
    );

    let out = run(&[
        "witness",
        catalog("example8").to_str().unwrap(),
        "--point",
        "1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(2), "not a unit sphere point");
}

#[test]
fn structure_label_selects_triple_member() {
    let out = run(&[
        "albanese",
        catalog("example8").to_str().unwrap(),
        "--structure",
        "J",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "albanese",
        catalog("example8").to_str().unwrap(),
        "--structure",
        "Q",
    ]);
    assert_eq!(out.status.code(), Some(2), "unknown label");
}

#[test]
fn iteration_cap_env_var_reaches_the_saturation_core() {
    let out = bin()
        .args(["albanese", catalog("kodaira").to_str().unwrap()])
        .env("HYPERNIL_MAX_ITER", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not stabilize"));

    let out = bin()
        .args(["albanese", catalog("kodaira").to_str().unwrap()])
        .env("HYPERNIL_MAX_ITER", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn complex_check_reports_all_structures() {
    let out = run(&["complex-check", catalog("iwasawa6").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("integrable=true"));
    assert!(text.contains("abelian=false"));

    let out = run(&["complex-check", catalog("example8").to_str().unwrap()]);
    assert!(stdout(&out).contains("quaternionic=true abelian_hypercomplex=true"));
}

#[test]
fn missing_file_is_a_parse_error() {
    let out = run(&["series", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_integrable_triple_is_refused_at_load() {
    // the flat quaternionic action on the Kodaira bracket satisfies the
    // quaternionic relations but J is not integrable, so the triple's type
    // invariant fails and every command refuses the file
    let kod = hypernil::catalog::kodaira();
    let bad = hypernil::problem::ProblemFile {
        name: "kodaira_flat_triple".into(),
        notes: String::new(),
        field: kod.algebra.field().clone(),
        algebra: kod.algebra,
        complex: None,
        hypercomplex: Some(hypernil::catalog::standard_quaternion_triple(1)),
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad_triple.json");
    std::fs::write(&path, bad.to_canonical_json()).unwrap();

    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("PASS  quaternionic"));
    assert!(text.contains("FAIL  integrable[J]"));

    let out = run(&["series", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
