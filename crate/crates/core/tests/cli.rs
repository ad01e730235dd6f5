use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointed-posets")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn charpoly_prints_both_sides() {
    let o = run(&["charpoly", "--family", "A", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("x^2-6x+9").count(), 2, "{text}");
}

#[test]
fn invalid_n_is_a_usage_error() {
    let o = run(&["enumerate", "--family", "A", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n must be at least 1"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["charpoly", "--family", "A_fixed", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["charpoly", "--family", "C", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn cap_is_enforced() {
    let o = run(&["enumerate", "--family", "MA", "--n", "5", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--family", "B", "--max-n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), (1..=4).map(|n| n + 2).sum::<usize>());
    assert!(rows.iter().all(|r| r["verdict"] == true));
}

#[test]
fn negative_self_tests_fail() {
    assert_eq!(run(&["verify", "--family", "A", "--max-n", "3", "--self-test-negative"]).status.code(), Some(1));
    assert_eq!(run(&["charpoly", "--family", "beta", "--n", "2", "--self-test-negative"]).status.code(), Some(1));
    let o = run(&["identities", "--lemma", "usefulB", "--max-n", "3", "--self-test-negative"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failure"));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--family", "B", "--n", "2", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 13);
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    let o = run(&["counts", "--family", "MA", "--max-n", "4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("n,rank,enumerated,generating_function,verdict\n"));
    assert!(text.contains("3,1,9,9,pass"));
}

#[test]
fn homology_reports_both_degree_labels() {
    let o = run(&["homology", "--family", "A_fixed", "--n", "4", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("top degree 1 (shifted 3), rank 16, expected 16"));
    let o = run(&["homology", "--family", "A", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total rank 9, expected 9"));
    let o = run(&["homology", "--family", "B_interval", "--n", "2", "--cohen-macaulay"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "homology", "--family", "A_fixed", "--n", "3", "--i", "1", "--bottom", "{1*|2*|3*}", "--top", "{1*23}",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn semimodularity_exit_codes() {
    let o = run(&["semimodularity", "--family", "A_fixed", "--n", "4", "--i", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["semimodularity", "--family", "A", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["properties"][0]["holds"], false);
}

#[test]
fn hopf_and_identities_pass() {
    let o = run(&["hopf", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("structural: 1⊗a_3 + 4·(a_2⊗a_2) + a_3⊗1"), "{}", stdout(&o));
    assert_eq!(run(&["hopf", "--max-n", "5"]).status.code(), Some(0));
    assert_eq!(run(&["identities", "--max-n", "5"]).status.code(), Some(0));
}
