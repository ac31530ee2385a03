//! End-to-end runs of the `qonsager` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qonsager")).args(args).env_remove("QONSAGER_DEFAULT_RHO").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_level_zero_prints_g1() {
    let o = run(&["gen", "--k", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("G_1 = ((-1)/(q))*AB + (q)*BA\n"), "{}", stdout(&o));
}

#[test]
fn gen_with_constant_shows_it() {
    let o = run(&["gen", "--k", "0", "--a-const", "1=2/3"]);
    assert!(stdout(&o).contains("G_1 = ((2)/(3)) + ((-1)/(q))*AB + (q)*BA\n"), "{}", stdout(&o));
}

#[test]
fn gen_json_holds_w_minus_one() {
    let o = run(&["gen", "--k", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let w = v["generators"].as_array().unwrap().iter().find(|g| g["name"] == "W_-1").unwrap();
    let terms = w["polynomial"]["terms"].as_array().unwrap();
    let words: Vec<&str> = terms.iter().map(|t| t["word"].as_str().unwrap()).collect();
    assert_eq!(words, ["B", "AAB", "ABA", "BAA"]);
    assert_eq!(terms[2]["coeff"], "(q^4 + 1)/(q^2*r)");
    assert_eq!(v["rho"], "formal");
}

#[test]
fn negative_level_is_a_usage_error() {
    assert_eq!(run(&["gen", "--k", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_passes_on_pair_and_sum() {
    for rep in ["d2:a=2,b=3", "dsum:(d2:a=2,b=3)+(d2:a=5,b=7)"] {
        let o = run(&["verify", "--k", "2", "--rep", rep]);
        assert_eq!(o.status.code(), Some(0), "{rep}");
        assert!(stdout(&o).contains("all passed"));
    }
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--k", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v.as_array().unwrap();
    assert!(!list.is_empty());
    assert!(list.iter().all(|e| e["passed"] == true && e.get("relation").is_some() && e.get("rep").is_some()));
}

#[test]
fn degenerate_rep_is_rejected() {
    let o = run(&["verify", "--rep", "d2:a=1,b=3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rho undetermined"));
}

#[test]
fn explicit_rho_mismatch_is_rejected() {
    let o = run(&["verify", "--k", "0", "--rho", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn explicit_rho_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qonsager"))
        .args(["export", "--name", "W_-1"])
        .env("QONSAGER_DEFAULT_RHO", "-(q^2-q^-2)^2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('r'), "{text}");
    let o = run(&["verify", "--k", "1", "--rho", "-(q^2-q^-2)^2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn hierarchy_commutes() {
    let o = run(&["hierarchy", "--k", "2", "--check-commute"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("I_5 = "));
    assert!(text.contains("commute    6/6 passed"));
    let o = run(&["hierarchy", "--k", "1", "--kappa", "2", "--kappa-star", "-1/3", "--kappa-plus", "q", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn all_zero_kappas_are_rejected() {
    let o = run(&["hierarchy", "--k", "0", "--kappa", "0", "--kappa-star", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn aw_discover_finds_first_order_relation() {
    let o = run(&["aw-discover", "--rep", "aw2:a=2", "--max-order", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["n"], 1);
    assert_eq!(v[0]["alphas"][0], v[0]["alpha"]);
    assert_eq!(v[0]["witness"], true);
}

#[test]
fn aw_discover_exit_codes() {
    assert_eq!(run(&["aw-discover", "--rep", "d2:a=2,b=3", "--max-order", "0"]).status.code(), Some(1));
    assert_eq!(run(&["aw-discover", "--rep", "d2:a=2,b=3", "--max-order", "1"]).status.code(), Some(4));
}

#[test]
fn export_round_trips_through_json() {
    let dir = std::env::temp_dir().join(format!("qonsager-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2.json");
    let o = run(&["export", "--name", "G_2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let o = run(&["export", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout(&o), first);
    let o = run(&["export", "--input", path.to_str().unwrap(), "--format", "latex"]);
    assert!(stdout(&o).contains("\\textsf{A}^*"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_f_requires_zero_constants() {
    assert_eq!(run(&["export", "--name", "f_1"]).status.code(), Some(0));
    assert_eq!(run(&["export", "--name", "f_1", "--a-const", "1=1"]).status.code(), Some(1));
    assert_eq!(run(&["export", "--name", "X_1"]).status.code(), Some(1));
}

#[test]
fn coeffs_json_lists_levels() {
    let o = run(&["coeffs", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["coefficients"][0]["symbol"], "a_0,0");
    assert_eq!(v[0]["coefficients"][0]["value"], "(-1)/(q)");
}
