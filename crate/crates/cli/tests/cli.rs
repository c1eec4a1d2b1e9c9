use std::process::{Command, Output};

use serde_json::Value;

fn bgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgg")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = bgg(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn kostant_a2() {
    let out = bgg(&["kostant", "--type", "A2", "--nu", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
    assert_eq!(json(&["kostant", "--type", "A2", "--nu", "2,2"])["kostant"], 3);
}

#[test]
fn roots_a1() {
    let v = json(&["roots", "--type", "A1"]);
    assert_eq!(v["num_positive"], 1);
    assert_eq!(v["positive_roots"][0]["root"], serde_json::json!([1]));
}

#[test]
fn sl2_block_matrices() {
    let v = json(&["block", "--type", "A1", "--weight", "0"]);
    assert_eq!(v["decomposition"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["cartan"], serde_json::json!([[1, 1], [1, 2]]));
    assert_eq!(v["class"], serde_json::json!([["0"], ["-2"]]));
}

#[test]
fn central_character_a2() {
    let v = json(&["central-char", "--type", "A2", "--weight", "1,1"]);
    assert_eq!(v["casimir_value"], "1");
    assert_eq!(v["psi"], "1/9*h1^2 + 1/9*h1*h2 + 1/9*h2^2 - 1/3");
}

#[test]
fn linked_partition() {
    let v = json(&["linked", "--type", "A1", "--weights", "0;-2;1;-3"]);
    assert_eq!(v, serde_json::json!([[["0"], ["-2"]], [["1"], ["-3"]]]));
}

#[test]
fn norm_of_normal_ordered_word() {
    let v = json(&["norm", "--type", "A1", "--prime", "5", "--log-radius", "1/2", "--word", "2,0,0"]);
    assert_eq!(v["log_norm"], "3/2");
}

#[test]
fn maximal_vector_exists_exactly_at_the_pairing() {
    let v = json(&["maximal-vectors", "--type", "A2", "--weight", "1,0", "--nu", "2,0"]);
    assert_eq!(v["count"], 1);
    let v = json(&["maximal-vectors", "--type", "A2", "--weight", "1,0", "--nu", "1,0"]);
    assert_eq!(v["count"], 0);
}

#[test]
fn cartan_matrix_file() {
    let dir = std::env::temp_dir().join(format!("bgg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("b2.json");
    std::fs::write(&good, r#"{"cartan": [[2,-2],[-1,2]]}"#).unwrap();
    let v = json(&["roots", "--cartan", good.to_str().unwrap()]);
    assert_eq!(v["num_positive"], 4);
    let bad = dir.join("affine.json");
    std::fs::write(&bad, r#"{"cartan": [[2,-2],[-2,2]]}"#).unwrap();
    assert_eq!(bgg(&["roots", "--cartan", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(bgg(&["kostant", "--type", "A2", "--bogus"]).status.code(), Some(2));
    assert_eq!(bgg(&["kostant", "--type", "A2", "--nu", "x"]).status.code(), Some(2));
    assert_eq!(bgg(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bgg(&["kostant", "--type", "Q3", "--nu", "1"]).status.code(), Some(1));
    assert_eq!(bgg(&["decomp", "--type", "A1", "--weight", "1/2"]).status.code(), Some(1));
    assert_eq!(
        bgg(&["norm", "--type", "A1", "--prime", "4", "--log-radius", "1", "--word", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn selftest_is_deterministic() {
    let a = bgg(&["selftest", "--seed", "7", "--fast", "--type", "G2"]);
    let b = bgg(&["selftest", "--seed", "7", "--fast", "--type", "G2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["block", "--type", "A2", "--weight", "0,0", "--json"];
    let one = Command::new(env!("CARGO_BIN_EXE_bgg")).args(args).env("BGG_WORKERS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_bgg")).args(args).env("BGG_WORKERS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn json_output_reprints_identically() {
    for args in [
        vec!["block", "--type", "A2", "--weight", "0,0"],
        vec!["decomp", "--type", "B2", "--weight", "0,0"],
        vec!["shapovalov", "--type", "A2", "--nu", "1,1"],
        vec!["weyl-orbit", "--type", "G2", "--weight", "1,0"],
    ] {
        let mut all = args.clone();
        all.push("--json");
        let raw = stdout(&bgg(&all));
        let v: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap(), raw.trim_end());
    }
}
