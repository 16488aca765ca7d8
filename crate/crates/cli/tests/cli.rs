use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equisplit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    (out.status.code().expect("exit code"), v)
}

#[test]
fn family_coeffs_for_reflections_in_d6() {
    let (code, v) = json(&["family-coeffs", "--group", "dihedral:6", "--family", "seed:C2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let cs: Vec<&str> = v["payload"]["coefficients"].as_array().unwrap().iter().map(|c| c["c"].as_str().unwrap()).collect();
    assert_eq!(cs, ["-1/3", "1"]);
    assert_eq!(v["payload"]["denominatorPrimes"], serde_json::json!([3]));
}

#[test]
fn ro_query_at_zero_is_z() {
    let out = run(&["ro-query", "--p", "3", "--degree", "0,0,0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Z<1>");
    let (_, v) = json(&["ro-query", "--p", "3", "--degree", "0,0,0"]);
    assert_eq!(v["payload"]["summands"][0]["order"], 0);
}

#[test]
fn ro_query_negative_cone_and_localization() {
    let (code, v) = json(&["ro-query", "--p", "3", "--degree", "-2,2,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["summands"][0]["index"], 2);
    let (_, w) = json(&["ro-query", "--p", "3", "--degree", "-2,2,0", "--localize", "2"]);
    assert_eq!(w["payload"]["summands"][0]["index"], 1);
}

#[test]
fn ro_mult_lands_on_the_index() {
    let out = run(&["ro-mult", "--p", "3", "--left", "u_2s", "--right", "2* u_2s^-1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2*1");
    let out = run(&["ro-mult", "--p", "3", "--left", "a_s", "--right", "a_g"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
}

#[test]
fn glue_check_passes_on_a_small_box() {
    let (code, v) = json(&["glue-check", "--p", "5", "--box", "3,3,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["gluing"]["degrees"], 7 * 7 * 5);
}

#[test]
fn tau_sign_matches_the_residue_rule() {
    for (t, s) in [(0, "1"), (1, "1"), (2, "-1"), (3, "-1"), (4, "1")] {
        let ts = t.to_string();
        let out = run(&["tau-sign", "--degree", "0,0,2", "--t", &ts]);
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), s, "t = {t}");
    }
}

#[test]
fn bredon_and_formula_agree_on_a_sphere() {
    for level in ["1", "C2", "C3", "G"] {
        let (_, a) = json(&["bredon", "--complex", "sphere:1,1@dihedral:6", "--coeff", "ABurnside", "--level", level]);
        let (_, b) = json(&["burnside-formula", "--complex", "sphere:1,1@dihedral:6", "--level", level]);
        assert_eq!(a["payload"], b["payload"], "level {level}");
    }
}

#[test]
fn bredon_reads_complex_json() {
    let circle = r#"{"group": {"constructor": "cyclic", "args": [2]},
        "cells": [{"id": "v", "dim": 0}, {"id": "e+", "dim": 1}, {"id": "e-", "dim": 1}],
        "action": {"1": [["v", 1], ["e-", 1], ["e+", 1]]},
        "boundary": {"1": [[1], [1]]}, "based": true}"#;
    let (code, v) = json(&["bredon", "--complex", circle]);
    assert_eq!(code, 0, "{v}");
    let degrees = v["payload"]["degrees"].as_array().unwrap();
    assert_eq!(degrees[0]["display"], "Z/2");
    assert_eq!(degrees[1]["display"], "0");
}

#[test]
fn box_product_with_n_f_vanishes() {
    let (code, v) = json(&["box", "--group", "dihedral:10", "--left", "ZBar", "--right", "N", "--family", "seed:C5", "--primes", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["zero"], true);
}

#[test]
fn semidirect_report_passes_for_d10() {
    let (code, v) = json(&["semidirect-report", "--group", "dihedral:10", "--normal", "C5", "--complement", "C2"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["certificates"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn splitting_primes_names_the_rule() {
    let (_, v) = json(&["splitting-primes", "--group", "dihedral:6", "--family", "seed:C3"]);
    assert_eq!(v["payload"]["requiredPrimes"], serde_json::json!([2]));
    assert_eq!(v["payload"]["theoremApplied"], "twosplit");
}

#[test]
fn group_info_marks_and_idempotents() {
    let (_, v) = json(&["group-info", "--group", "symmetric:4"]);
    assert_eq!(v["payload"]["order"], 24);
    assert_eq!(v["payload"]["classes"].as_array().unwrap().len(), 11);
    let (_, m) = json(&["marks", "--group", "dihedral:6", "--level", "0"]);
    assert_eq!(m["payload"]["marks"], serde_json::json!([[1]]));
    let (code, e) = json(&["idempotents", "--group", "dihedral:6", "--primes", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(e["payload"]["1"], serde_json::json!(["1/6", "0", "0", "0"]));
    let (code, _) = json(&["idempotents", "--group", "dihedral:6", "--primes", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["ro-query", "--p", "4", "--degree", "0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["family-coeffs", "--group", "nosuch:3", "--family", "all"]).status.code(), Some(2));
    assert_eq!(run(&["ro-mult", "--p", "3", "--left", "a_s a_s", "--right", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let (code, v) = json(&["ro-mult", "--p", "3", "--left", "2*u_gs^-1", "--right", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert!(v["diagnostics"][0].as_str().unwrap().contains("index"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-all", "--only", "1,8", "--box", "4,3,2"];
    let (a, b) = (json(&args), json(&args));
    assert_eq!(a.0, 0);
    assert_eq!(a.1.to_string(), b.1.to_string());
}

#[test]
fn verify_all_reports_ok() {
    let (code, v) = json(&["verify-all", "--p", "3"]);
    assert_eq!(code, 0, "{}", v["diagnostics"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["criteria"].as_array().unwrap().len(), 11);
}
