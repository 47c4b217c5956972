//! End-to-end runs of the `fansheaf` binary on the fixture fans.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fansheaf")).args(args).env_remove("FANSHEAF_MAX_DIM").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fansheaf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn invariants_of_square_cone() {
    let out = run(&["invariants", "--fan", &data("square_cone.json"), "--which", "h,g,hstar,cd,local-hstar"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["h"], "1+t");
    assert_eq!(v["g"], "1+t");
    assert_eq!(v["hstar"], "1+t");
    assert_eq!(v["cd"], "c^2+2d");
    assert_eq!(v["local_hstar"], "0");
    assert_eq!(v["coefficients"]["cd"]["terms"]["d"], "2");
}

#[test]
fn cross_check_agrees_on_square_cone() {
    let out = run(&["invariants", "--fan", &data("square_cone.json"), "--which", "h,g,hstar,cd", "--cross-check"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    for k in ["h", "g", "hstar", "cd"] {
        assert_eq!(v["cross_check"][k]["agrees"], true, "{k}");
    }
    // eta(c^2 + 2d) = (1 + t)^3
    assert_eq!(v["cross_check"]["cd"]["sheaf"], "1+3t+3t^2+t^3");
}

#[test]
fn mixed_invariants_of_split_cone() {
    let out = run(&[
        "mixed",
        "--coarse",
        &data("cone2.json"),
        "--fine",
        &data("split2.json"),
        "--which",
        "mixed-h,local-h,mixed-cd,local-cd",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["mixed_h"], "1+uv");
    assert_eq!(v["local_h"], "t");
    assert_eq!(v["mixed_cd"], "1⊗c+d'⊗1");
    assert_eq!(v["local_cd"], "d");
}

#[test]
fn refined_limit_mixed_hstar_of_split_segment() {
    let out = run(&[
        "mixed",
        "--coarse",
        &data("segment.json"),
        "--fine",
        &data("split_segment.json"),
        "--which",
        "refined-limit-mixed-hstar",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["refined_limit_mixed_hstar"], "1+uvw^2");
}

#[test]
fn verify_on_split_cone_passes() {
    let out = run(&["verify", "--coarse", &data("cone2.json"), "--fine", &data("split2.json"), "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().any(|c| c["id"].as_str().unwrap().starts_with("mixed_h/")));
    assert!(v["corpus_hash"].is_string());
}

#[test]
fn output_is_byte_stable() {
    let args = ["mixed", "--coarse", &data("cone2.json"), "--fine", &data("split2.json"), "--which", "mixed-h,mixed-cd"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "--coarse", &data("segment.json"), "--fine", &data("split_segment.json"), "--suite", "props"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn unknown_selector_fails_before_reading_the_fan() {
    let out = run(&["invariants", "--fan", "/nonexistent/fan.json", "--which", "h,bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unknown selector \"bogus\""), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn dimension_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fansheaf"))
        .args(["invariants", "--fan", &data("square_cone.json"), "--which", "h"])
        .env("FANSHEAF_MAX_DIM", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("exceeds the cap 2"), "{}", stderr(&out));
}

#[test]
fn declared_degree_map_is_validated() {
    let out = run(&["invariants", "--fan", &data("segment_degree.json"), "--which", "hstar"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["hstar"], "1+t");
    let out = run(&["invariants", "--fan", &data("segment_bad_degree.json"), "--which", "hstar"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degree_map"), "{}", stderr(&out));
}

#[test]
fn parse_errors_carry_file_and_line() {
    let path = data("truncated.json");
    let out = run(&["invariants", "--fan", &path, "--which", "h"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains(&format!("{path}:4:")), "{err}");
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn sheaf_dump_writes_stalks() {
    let dump = tmp("cone2_c.json");
    let out = run(&["sheaf", "--fan", &data("cone2.json"), "--structure", "C", "--dump", dump.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["poincare"], "1+t");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(v["structure"], "C");
    assert_eq!(v["cones"].as_array().unwrap().len(), 4);
    assert_eq!(v["flabby"], true);
    let bad = run(&["sheaf", "--fan", &data("cone2.json"), "--structure", "B", "--dump", dump.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn refine_writes_a_loadable_simplicial_fan() {
    let out_path = tmp("square_refined.json");
    let out = run(&["refine", "--fan", &data("square_cone.json"), "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["maximal_cones"], 2);
    // the refinement is a subdivision of the input with the same Ehrhart data
    let out = run(&["mixed", "--coarse", &data("square_cone.json"), "--fine", out_path.to_str().unwrap(), "--which", "mixed-h"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = run(&["invariants", "--fan", out_path.to_str().unwrap(), "--which", "h,hstar"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["hstar"], "1+t");
}

#[test]
fn text_format_prints_key_value_lines() {
    let out = run(&["--format", "text", "mixed", "--coarse", &data("cone2.json"), "--fine", &data("split2.json"), "--which", "mixed-h"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).lines().any(|l| l == "mixed_h: 1+uv"));
}
