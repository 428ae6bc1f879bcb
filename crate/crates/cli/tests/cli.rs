use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::Value;
use specmon_cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn specmon(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("specmon").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn analyze_json_matches_golden_file() {
    let file = data("bicyclic.mon");
    let (code, out, _) = specmon(&["analyze", &file, "--json", "--deterministic"]);
    assert_eq!(code, EXIT_OK);
    let golden = std::fs::read_to_string(data("bicyclic_analyze.json")).unwrap();
    assert_eq!(out, golden);
}

#[test]
fn analyze_json_is_byte_stable() {
    let file = data("z2.mon");
    let args = ["analyze", &file, "--json", "--deterministic"];
    assert_eq!(specmon(&args), specmon(&args));
}

#[test]
fn timings_only_without_deterministic() {
    let file = data("bicyclic.mon");
    let (_, out, _) = specmon(&["analyze", &file, "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["timings_ms"]["units"].is_number());
}

#[test]
fn analyze_text_reports_lemma() {
    let (code, out, _) = specmon(&["analyze", &data("bicyclic.mon")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("overlap_free: true"));
    assert!(out.contains("confluent: true"));
    assert!(out.contains("units: trivial"));
    assert!(out.contains("certificate: overlap_free_lemma"));
}

#[test]
fn nf_of_cube_in_z2() {
    let (code, out, _) = specmon(&["nf", &data("z2.mon"), "aaa"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "a\n");
}

#[test]
fn solve_inverse_pair() {
    let (code, out, _) = specmon(&[
        "solve",
        &data("bicyclic.mon"),
        &data("inverse_pair.eq"),
        "--max-len",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("solution: x=., y=b"), "{out}");
}

#[test]
fn require_overlap_free_sets_exit_code() {
    let (code, _, err) = specmon(&["units", &data("z2.mon"), "--require-overlap-free"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(err.contains("not overlap-free"));
    let (code, _, _) = specmon(&["units", &data("bicyclic.mon"), "--require-overlap-free"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn input_errors_carry_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mon");
    std::fs::write(&bad, "alphabet: a b\nrelator: a c\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    let (code, _, err) = specmon(&["analyze", &bad]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("bad.mon: line 2, column 12"), "{err}");
    assert!(err.contains("unknown symbol `c`"));

    let (code, _, _) = specmon(&["analyze", "/nonexistent/x.mon"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = specmon(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = specmon(&["nf", &data("z2.mon"), "ab"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn exhausted_budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let eq = dir.path().join("free.eq");
    std::fs::write(&eq, "vars: x y z\neq: x y z = a a a\n").unwrap();
    let (code, _, err) = specmon(&[
        "solve",
        &data("bicyclic.mon"),
        &eq.to_string_lossy(),
        "--max-len",
        "4",
        "--budget",
        "10",
    ]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
    assert!(err.contains("budget exceeded"));
}

#[test]
fn grammar_warns_on_non_confluent_systems() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("nc.mon");
    std::fs::write(&f, "alphabet: a b c\nrelator: a b c\nrelator: c b\n").unwrap();
    let (code, out, err) = specmon(&["grammar", &f.to_string_lossy()]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("not confluent"));
    assert!(out.lines().any(|l| l == "S -> a S b S c"), "{out}");
    let (_, out, _) = specmon(&["grammar", &data("bicyclic.mon"), "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["warning"].is_null());
}

#[test]
fn samples_round_trip_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["bicyclic", "z2", "z", "random"] {
        let (code, text, _) = specmon(&["sample", name, "--seed", "7"]);
        assert_eq!(code, EXIT_OK);
        let f = dir.path().join(format!("{name}.mon"));
        std::fs::write(&f, text).unwrap();
        let (code, _, err) = specmon(&["analyze", &f.to_string_lossy()]);
        assert_eq!(code, EXIT_OK, "{name}: {err}");
    }
    let (code, _, _) = specmon(&["sample", "nope"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn random_sample_depends_only_on_seed() {
    let a = specmon(&["sample", "random", "--seed", "11"]);
    let b = specmon(&["sample", "random", "--seed", "11"]);
    let c = specmon(&["sample", "random", "--seed", "12"]);
    assert_eq!(a, b);
    assert_ne!(a.1, c.1);
}

#[test]
fn analyze_large_overlap_free_system_quickly() {
    let (code, text, _) = specmon(&[
        "sample",
        "random",
        "--rules",
        "71",
        "--max-len",
        "18",
        "--seed",
        "5",
    ]);
    assert_eq!(code, EXIT_OK);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("big.mon");
    std::fs::write(&f, text).unwrap();
    let start = Instant::now();
    let (code, out, _) = specmon(&["analyze", &f.to_string_lossy(), "--json", "--deterministic"]);
    assert_eq!(code, EXIT_OK);
    assert!(start.elapsed() < Duration::from_secs(10));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["rule_count"], 71);
    assert_eq!(v["units"]["verdict"], "trivial");
    assert_eq!(v["units"]["certificate"], "overlap_free_lemma");
}
