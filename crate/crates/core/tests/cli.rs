//! Exit codes, determinism and JSON round trips of the command-line tool.

use std::path::PathBuf;
use std::process::Command;

use matroid_divisors::matroid::Matroid;
use matroid_divisors::monic_slp::MonicRep;
use matroid_divisors::projective::AnyConfig;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_matroid-divisors")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matroid-divisors-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn fano_rank_is_two() {
    assert_eq!(run(&["divisor", "rank", "--matroid", "fano"]), (0, "2\n".into()));
}

#[test]
fn bounds_exit_codes() {
    let (code, out) = run(&["mnev", "bounds", "--prime", "443"]);
    assert_eq!(code, 0);
    assert!(out.contains("max 225 < p: pass"), "{out}");
    assert_eq!(run(&["mnev", "bounds", "--prime", "439"]).0, 1);
}

#[test]
fn fano_has_no_ternary_realization() {
    assert_eq!(run(&["realize", "search", "--matroid", "fano", "--field", "p=3"]), (1, "none\n".into()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["divisor", "rank", "--bogus"]).0, 2);
    assert_eq!(run(&["realize", "search", "--matroid", "fano", "--field", "p=4"]).0, 2);
    assert_eq!(run(&["divisor", "rank"]).0, 2);
    assert_eq!(run(&[]).0, 2);
}

#[test]
fn witness_output_is_deterministic_and_round_trips() {
    let args = ["mnev", "witness", "--template", "zmodp:5", "--field", "F3125", "--seed", "4", "--format", "json"];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, a);
    let cfg = AnyConfig::from_json(&serde_json::from_str(&a).unwrap()).unwrap();
    assert_eq!(AnyConfig::from_json(&cfg.to_json()).unwrap().to_json(), cfg.to_json());

    let (_, compiled) = run(&["mnev", "compile", "--template", "zmodp:5", "--format", "json"]);
    let compiled: Value = serde_json::from_str(&compiled).unwrap();
    let m = Matroid::from_json(&compiled["matroid"]).unwrap();
    assert_eq!(m.len(), 84);
    let mpath = scratch("zmodp5.json", &compiled["matroid"].to_string());
    let cpath = scratch("witness.json", &a);
    let (code, out) = run(&["realize", "check", "--input", mpath.to_str().unwrap(), "--config", cpath.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "match\n"));
}

#[test]
fn slp_pipeline() {
    let alg = scratch("alg.json", r#"{"n": 1, "relations": [["y1^2 + 1", "2*y1"]], "inversions": []}"#);
    let (code, rep) = run(&["slp", "compile", "--input", alg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let parsed = MonicRep::from_json(&serde_json::from_str(&rep).unwrap()).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed.to_json()).unwrap() + "\n", rep);
    let rpath = scratch("rep.json", &rep);
    let (code, out) = run(&["slp", "validate", "--input", rpath.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("= y1^2 - 2*y1 + 1") || out.contains("= y1^2 + 1 - 2*y1"), "{out}");
    let (code, _) = run(&["slp", "eval", "--input", rpath.to_str().unwrap(), "--field", "Q", "--t", "5", "--y", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn matroid_commands() {
    let (code, out) = run(&["matroid", "enumerate", "--n", "5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("4 matroids on 5 elements"));
    let (code, out) = run(&["divisor", "classify", "--matroid", "u2ext:5"]);
    assert_eq!((code, out.as_str()), (0, "case 1\n"));
    assert_eq!(run(&["divisor", "classify", "--matroid", "fano"]).0, 1);
    let bad = scratch("bad.json", r#"{"elements": ["a","b","c"], "flats": [["a","b","c"]]}"#);
    assert_eq!(run(&["matroid", "validate", "--input", bad.to_str().unwrap()]).0, 1);
    let (code, dot) = run(&["divisor", "harmonic", "--matroid", "fano", "--element", "001", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph") || dot.starts_with("graph"), "{dot}");
}

#[test]
fn count_table() {
    let (code, out) = run(&["--table", "counts"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("fano: counts (7,7,21) threshold 8\n"));
}
