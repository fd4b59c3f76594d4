use serde_json::Value;
use std::process::{Command, Output};

fn weylq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylq"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classes_csv_a2_has_three_rows() {
    let out = weylq(&["classes", "A2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    // Coxeter row: l(s) = 2, dim T_s = 2, |m+| = 3, dim G = 8.
    assert!(text
        .lines()
        .any(|l| l.starts_with("1 2,") && l.ends_with(",2,0,2,3,8")));
}

#[test]
fn classes_json_a1() {
    let out = weylq(&["classes", "A1"]);
    let v = json(&out);
    assert_eq!(v["schema"], "weylq/1");
    assert_eq!(v["result"].as_array().unwrap().len(), 2);
}

#[test]
fn classes_rank_gate() {
    let out = weylq(&["classes", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank 8"));
}

#[test]
fn ordering_segments() {
    let v = json(&weylq(&["ordering", "A2", "--class", "coxeter"]));
    assert_eq!(
        v["result"]["segment"]["m_plus_roots"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    let v = json(&weylq(&["ordering", "A2", "--class", "identity"]));
    assert!(v["result"]["segment"]["m_plus_roots"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn ordering_appendix_g2() {
    let out = weylq(&["ordering", "G2", "--appendix"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["result"]["fixture"]["ordering"].as_array().unwrap().len(),
        6
    );
    assert!(v["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn emitted_ordering_matches_frozen_fixture() {
    let out = weylq(&["ordering", "B2", "--appendix", "--emit-ordering"]);
    let frozen: Value = serde_json::from_str(include_str!("../fixtures/appendix/B2.json")).unwrap();
    assert_eq!(json(&out), frozen);
}

#[test]
fn verify_rank_two() {
    for label in ["A1", "A2", "G2"] {
        let out = weylq(&["verify", label]);
        assert_eq!(out.status.code(), Some(0), "{label}");
        assert_eq!(json(&out)["result"]["ok"], true);
    }
}

#[test]
fn sl2w_generic_and_singular() {
    let out = weylq(&["sl2w", "--max-m", "3", "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["matches_generic"], true);
    assert_eq!(weylq(&["sl2w", "--epsilon", "-1"]).status.code(), Some(2));
    let out = weylq(&[
        "sl2w",
        "--epsilon",
        "root:3",
        "--max-m",
        "3",
        "--max-k",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["matches_generic"], false);
}

#[test]
fn output_is_byte_stable() {
    let a = weylq(&["classes", "B2"]).stdout;
    let b = weylq(&["classes", "B2"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn usage_errors() {
    assert_eq!(
        weylq(&["ordering", "A2", "--class", "zz"]).status.code(),
        Some(2)
    );
    assert_eq!(weylq(&["roots"]).status.code(), Some(2));
    assert_eq!(weylq(&["roots", "X9"]).status.code(), Some(2));
}
