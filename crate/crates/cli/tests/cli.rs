use std::process::{Command, Output};

fn flopcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flopcheck"))
        .args(args)
        .env_remove("FLOPCHECK_CUTOFF")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn cohomology_anchor() {
    let out = flopcheck(&["cohomology", "--g", "2,4", "--mu", "0,-1", "--lambda", "1,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("H^1 = C^1"));
}

#[test]
fn cohomology_json_fields() {
    let out = flopcheck(&[
        "cohomology", "--g", "2,4", "--mu", "0,-1", "--lambda", "1,0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], "1");
    assert_eq!(v["dim"], "1");
}

#[test]
fn dims_table() {
    let out = flopcheck(&["dims", "--r", "2", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "G(r,n): dim G = 4, dim X_0 = 8, dim X = 9, dim W = 7\n"
    );
}

#[test]
fn verify_all_passes_and_exits_zero() {
    let out = flopcheck(&["verify-all", "--cutoff", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0 failed"));
    assert!(text.contains("REPORTED hom-compare"));
}

#[test]
fn verify_all_rejects_unpinned_n() {
    let out = flopcheck(&["verify-all", "--n", "5", "--cutoff", "2"]);
    assert!(!out.status.success());
}

#[test]
fn verify_all_json_is_byte_identical() {
    let a = flopcheck(&["verify-all", "--cutoff", "3", "--format", "json"]);
    let b = flopcheck(&["verify-all", "--cutoff", "3", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cutoff_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_flopcheck"))
        .args(["verify-all", "--format", "json"])
        .env("FLOPCHECK_CUTOFF", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["parameters"]["cutoff"], "2");
}

#[test]
fn output_file_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = flopcheck(&[
        "dims", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dim_w"], "7");
}

#[test]
fn graded_hom_witness_row() {
    let out = flopcheck(&["graded-hom", "--a", "O(2)", "--b", "O(0)", "--cutoff", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("p=1: [0, 1, 16]"));
}

#[test]
fn gram_determinant_line() {
    let out = flopcheck(&["gram", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.ends_with("det = 1\n") || text.ends_with("det = -1\n"));
}

#[test]
fn bad_expression_is_a_usage_error() {
    let out = flopcheck(&["euler", "--expr", "sym(2,"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_subcommand_fails() {
    let out = flopcheck(&["frobnicate"]);
    assert!(!out.status.success());
}
