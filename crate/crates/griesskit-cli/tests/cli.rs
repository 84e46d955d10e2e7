//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_griesskit"))
        .args(args)
        .env_remove("GRIESSKIT_CASE_DIR")
        .output()
        .expect("the binary should start")
}

fn json_stdout(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout should be valid JSON")
}

fn scratch_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("griesskit-{}-{name}", std::process::id()))
}

#[test]
fn the_catalog_lists_every_class() {
    let output = run(&["catalog", "--format", "json"]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    let cases = value["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 9);
    assert!(cases
        .iter()
        .any(|c| c["class"] == "5A" && c["lambda1"] == "3/128"));
    assert!(cases
        .iter()
        .any(|c| c["class"] == "2B" && c["lambda2"] == Value::Null));
}

#[test]
fn quantum_dimensions_come_with_exact_identifications() {
    let output = run(&["qdim", "--model", "11,12", "--h", "8", "--format", "json"]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    assert_eq!(value["label"], "(10,5)");
    assert_eq!(value["exact"], "2/1+1/1*sqrt(3)");
    assert!(value["numeric"].as_str().unwrap().starts_with("3.7320508"));
    assert_eq!(value["within_tolerance"], true);
    assert_eq!(value["note"], Value::Null);
}

#[test]
fn the_spanning_matrix_has_corank_one() {
    let output = run(&["gram", "--case", "a5", "--format", "json"]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    assert_eq!(value["dimension"], 7);
    assert_eq!(value["rank"], 6);
    let kernel = value["kernel"].as_array().unwrap();
    assert_eq!(kernel.len(), 1);
    let expected: Vec<Value> = ["1/1", "1/1", "1/1", "1/1", "1/1", "32/1", "32/1"]
        .iter()
        .map(|s| Value::from(*s))
        .collect();
    assert_eq!(kernel[0].as_array().unwrap(), &expected);
}

#[test]
fn verification_passes_for_both_cases() {
    for case in ["c3", "a5"] {
        let output = run(&["verify", "--case", case]);
        assert!(
            output.status.success(),
            "verify --case {case} should exit 0"
        );
        let text = String::from_utf8_lossy(&output.stdout);
        assert!(text.contains("result: PASS"));
        assert!(!text.contains("\nFAIL"));
    }
}

#[test]
fn forcing_a_summand_off_empties_the_solution_set() {
    let output = run(&[
        "solve", "--case", "a5", "--force", "n2=0", "--format", "json",
    ]);
    assert!(
        output.status.success(),
        "an empty solution set is still a successful run"
    );
    let value = json_stdout(&output);
    assert_eq!(value["solutions"], Value::Array(vec![]));
    assert_eq!(value["forced"][0]["variable"], "n2");
}

#[test]
fn the_unforced_searches_find_the_all_ones_point() {
    for case in ["c3", "a5"] {
        let output = run(&["solve", "--case", case, "--format", "json"]);
        assert!(output.status.success());
        let value = json_stdout(&output);
        let solutions = value["solutions"].as_array().unwrap();
        assert_eq!(solutions.len(), 1, "case {case}");
        assert!(solutions[0].as_array().unwrap().iter().all(|n| n == 1));
    }
}

#[test]
fn usage_errors_exit_with_status_two() {
    assert_eq!(run(&["table", "--case", "9z"]).status.code(), Some(2));
    assert_eq!(run(&["--nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["gram"]).status.code(), Some(2));
    let tol = run(&["qdim", "--model", "11,12", "--h", "8", "--tol", "0"]);
    assert_eq!(tol.status.code(), Some(2));
    let precision = run(&["qdim", "--model", "11,12", "--h", "8", "--precision", "8"]);
    assert_eq!(precision.status.code(), Some(2));
    let weight = run(&["qdim", "--model", "11,12", "--h", "3/b"]);
    assert_eq!(weight.status.code(), Some(2));
    let force = run(&["solve", "--case", "c3", "--force", "n99=1"]);
    assert_eq!(force.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let first = run(&["verify", "--case", "a5", "--format", "json"]);
    let second = run(&["verify", "--case", "a5", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
    let first = run(&["table", "--case", "c3"]);
    let second = run(&["table", "--case", "c3"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn the_out_flag_mirrors_stdout() {
    let path = scratch_path("eigen.json");
    let piped = run(&["eigen", "--case", "a5", "--format", "json"]);
    let filed = run(&[
        "eigen",
        "--case",
        "a5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(filed.status.success());
    assert!(filed.stdout.is_empty());
    let written = fs::read(&path).expect("the out file should exist");
    fs::remove_file(&path).ok();
    assert_eq!(written, piped.stdout);
}

#[test]
fn a_case_directory_without_files_is_reported() {
    let dir = scratch_path("empty-dir");
    fs::create_dir_all(&dir).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_griesskit"))
        .args(["table", "--case", "c3"])
        .env("GRIESSKIT_CASE_DIR", &dir)
        .output()
        .expect("the binary should start");
    fs::remove_dir_all(&dir).ok();
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("c3.case"));
}

#[test]
fn a_tampered_case_file_fails_verification() {
    let dir = scratch_path("tampered-dir");
    fs::create_dir_all(&dir).unwrap();
    let bundled = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../griesskit/assets/c3.case");
    let text = fs::read_to_string(bundled).expect("the bundled case file should exist");
    let tampered = text.replace("product a a = a:33/32", "product a a = a:1");
    assert_ne!(text, tampered, "the tamper target should be present");
    fs::write(dir.join("c3.case"), tampered).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_griesskit"))
        .args(["verify", "--case", "c3"])
        .env("GRIESSKIT_CASE_DIR", &dir)
        .output()
        .expect("the binary should start");
    fs::remove_dir_all(&dir).ok();
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("result: FAIL"));
}

#[test]
fn the_weight_four_report_carries_both_matrices() {
    let output = run(&["w4", "--case", "c3", "--format", "json"]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    assert_eq!(value["rank"], 6);
    assert_eq!(value["paper_matrix"].as_array().unwrap().len(), 6);
    assert_eq!(value["recomputed_matrix"].as_array().unwrap().len(), 6);
    assert_eq!(value["recomputed_matrix"][5][5], "70497/262144");
    let discrepancies = value["discrepancies"].as_array().unwrap();
    assert_eq!(discrepancies.len(), 6);
    assert_eq!(discrepancies[0]["row"], 1);
    assert_eq!(discrepancies[0]["col"], 1);
    assert_eq!(discrepancies[0]["paper"], "5/2");
    assert_eq!(discrepancies[0]["recomputed"], "105/22");
}

#[test]
fn fusion_products_follow_the_truncated_range() {
    let output = run(&[
        "fusion", "--model", "11,12", "--left", "10,1", "--right", "10,5", "--format", "json",
    ]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    let products = value["products"].as_array().unwrap();
    assert_eq!(products.len(), 1);
    assert_eq!(products[0]["label"], "(10,7)");
    assert_eq!(products[0]["weight"], "7/2");
}

#[test]
fn the_conformal_report_identifies_the_factor_models() {
    let output = run(&["conformal", "--case", "a5", "--format", "json"]);
    assert!(output.status.success());
    let value = json_stdout(&output);
    assert_eq!(value["axis_charge"], "1/2");
    assert_eq!(value["sum_is_conformal"], true);
    assert_eq!(value["total_charge"], "16/7");
    let factors = value["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 2);
    for factor in factors {
        assert_eq!(factor["model"], "M(7,8)");
        assert_eq!(factor["norm"], "25/56");
        assert_eq!(factor["central_charge"], "25/28");
    }
}
