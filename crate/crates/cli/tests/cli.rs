use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salemscope"))
        .args(args)
        .env_remove("SALEMSCOPE_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn pown_row6_n43() {
    let v = json(&["pown", "--poly", "1 0 -1 0 0 -1", "--half", "--n", "43"]);
    assert_eq!(v["coefficients"][1], "-21586");
    assert_eq!(v["degree"], 10);
}

#[test]
fn pown_big_coefficients_are_strings() {
    let v = json(&["pown", "--poly", "1 0 -1 0 0 -1", "--half", "--n", "200"]);
    assert_eq!(v["coefficients"][1], "-144186527874521531930");
}

#[test]
fn pown_n1_round_trips() {
    let v = json(&["pown", "--poly", "1,-1,-1,-1,1", "--n", "1"]);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "-1", "-1", "-1", "1"]));
}

#[test]
fn certify_row1() {
    let v = json(&["certify", "--poly", "1 -1 -1", "--half", "--max-n", "50"]);
    assert_eq!(v["verdict"], "salem");
    assert_eq!(v["witness_n"], 9);
}

#[test]
fn certify_both_and_direct() {
    let v = json(&["certify", "--poly", "1 -1 -1", "--half", "--method", "both"]);
    assert_eq!(v["verdict"], "salem");
    let v = json(&["certify", "--poly", "1 1 1 1 1", "--method", "direct"]);
    assert_eq!(v["verdict"], "not_salem");
    assert!(v["failure_reason"].as_str().unwrap().contains("Phi_5"));
}

#[test]
fn prob_d6_integral() {
    let v = json(&["prob", "--degree", "6", "--method", "integral"]);
    assert!((v["value"].as_f64().unwrap() - 0.0717258).abs() < 1e-6);
}

#[test]
fn prob_d4_defaults_to_exact() {
    let v = json(&["prob", "--degree", "4"]);
    assert_eq!(v["exact"], "1/3");
}

#[test]
fn output_is_independent_of_workers() {
    let scan = ["scan", "--poly", "1 -1 -1", "--half", "--from", "1", "--to", "300", "--chunk", "17"];
    let grid = ["prob", "--degree", "6", "--method", "grid", "--m", "300", "--symmetry"];
    for args in [&scan[..], &grid[..]] {
        let outputs: Vec<Vec<u8>> = ["1", "3"]
            .iter()
            .map(|w| {
                let mut a = args.to_vec();
                a.extend(["--workers", w]);
                let out = run(&a);
                assert!(out.status.success());
                out.stdout
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn scan_row1_count() {
    let v = json(&["scan", "--poly", "1 -1 -1", "--half", "--from", "1", "--to", "300"]);
    assert_eq!(v["count"], 98);
    assert!(v["warning"].is_null());
}

#[test]
fn csv_and_text_outputs() {
    let out = run(&["pown", "--poly", "1 -1 -1", "--half", "--n", "2", "--output", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("k,coefficient"));
    assert_eq!(text.lines().nth(2), Some("1,-3"));
    let out = run(&["certify", "--poly", "1 -1 -1", "--half", "--output", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("witness: P_9"));
}

#[test]
fn analyze_reports_growth_and_periodicity() {
    let v = json(&["analyze", "--poly", "1 -1 -1", "--half", "--max-n", "12"]);
    assert_eq!(v["cyclotomic_by_periodicity"], false);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 12);
    assert_eq!(records[8]["power_condition"], true);
    let v = json(&["analyze", "--poly", "1 1 1", "--half", "--max-n", "3"]);
    assert_eq!(v["cyclotomic_by_periodicity"], true);
}

#[test]
fn corpus_subset() {
    let v = json(&["corpus", "--only", "1,10"]);
    assert_eq!(v["passed"], true);
    let criteria: Vec<u64> = v["outcomes"].as_array().unwrap().iter().map(|o| o["criterion"].as_u64().unwrap()).collect();
    assert!(criteria.iter().all(|&c| c == 1 || c == 10));
}

#[test]
fn bad_input_exits_with_usage_error() {
    for args in [
        &["pown", "--poly", "1 x 2", "--n", "3"][..],
        &["pown", "--poly", "1 0 2", "--n", "3"][..],
        &["pown", "--poly", "1 -1 -1", "--half", "--n", "0"][..],
        &["certify", "--poly", "", "--half"][..],
        &["prob", "--degree", "7"][..],
        &["prob", "--degree", "8", "--method", "integral"][..],
        &["scan", "--poly", "1 -1 -1", "--half", "--from", "9", "--to", "3"][..],
        &["corpus", "--only", "11"][..],
        &["frobnicate"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(!err.contains("panicked"), "{args:?}: {err}");
    }
}
