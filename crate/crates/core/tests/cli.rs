mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use potentsq::cli::{run, EXIT_BUDGET, EXIT_MALFORMED, EXIT_NOT_FOUND, EXIT_OK, EXIT_VERIFY_FAILED};
use potentsq::doc::matrix_to_json;
use potentsq::rings::Ring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("potentsq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_then_verify_worked_example() {
    let dir = TempDir::new().unwrap();
    let z4 = Ring::integers_mod(4).unwrap();
    let a = write(&dir, "a.json", &matrix_to_json(&common::worked_example(&z4)));
    let d = dir.path().join("d.json");
    let (code, out, _) = call(&["decompose", "--input", &a, "--out", d.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("exponent 43"), "{out}");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&d).unwrap()).unwrap();
    assert_eq!(doc["exponent"], "43");
    assert_eq!(doc["guarantee"], "square-zero");
    assert_eq!(doc["certificate"]["corrected_potent_exponent"], true);
    let (code, out, _) = call(&["verify", "--input", d.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn out_dash_prints_only_the_document() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "Z/8", "rows": [[2]]}"#);
    let (code, out, _) = call(&["decompose", "--input", &a, "--out", "-"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["guarantee"], "square-in-p2");
    assert_eq!(doc["P"], serde_json::json!([[0]]));
    assert_eq!(doc["N"], serde_json::json!([[2]]));
}

#[test]
fn documents_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "GF(2^2)", "rows": [["x", 1], [0, "x+1"]]}"#);
    let first = call(&["decompose", "--input", &a, "--out", "-"]).1;
    let second = call(&["decompose", "--input", &a, "--out", "-"]).1;
    assert_eq!(first, second);
}

#[test]
fn corrupted_document_fails_verification() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "Z/4", "rows": [[2, 1], [3, 0]]}"#);
    let (_, doc, _) = call(&["decompose", "--input", &a, "--out", "-"]);
    let mut v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    let bumped = (v["N"][0][0].as_u64().unwrap() + 1) % 4;
    v["N"][0][0] = bumped.into();
    let d = write(&dir, "d.json", &v.to_string());
    let (code, out, _) = call(&["verify", "--input", &d]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("sum: FAIL"), "{out}");
}

#[test]
fn rcf_document() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "GF(2)", "rows": [[0,0,0],[1,0,0],[0,1,0]]}"#);
    let (code, out, _) = call(&["rcf", "--input", &a, "--out", "-"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["divisors"], serde_json::json!(["x^3"]));
    assert!(doc["Q"].is_array());
    let (code, out, _) = call(&["rcf", "--input", &a]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("x^3"));
}

#[test]
fn oracle_search_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "Z/8", "rows": [[2]]}"#);
    let (code, out, _) = call(&["oracle-search", "--input", &a, "--max-nil-index", "2", "--out", "-"]);
    assert_eq!(code, EXIT_NOT_FOUND);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc["found"].is_null());
    assert_eq!(doc["search_size"], 2);
    let (code, _, _) = call(&["oracle-search", "--input", &a, "--max-nil-index", "3"]);
    assert_eq!(code, EXIT_OK);
    let big = write(&dir, "b.json", r#"{"ring": "Z/4", "rows": [[2,0,0],[0,2,0],[0,0,2]]}"#);
    let (code, _, err) = call(&["oracle-search", "--input", &big, "--max-nil-index", "2", "--budget", "100"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn sweep_summary() {
    let (code, out, _) = call(&["sweep", "--ring", "Z/4", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("4 decomposed, 0 certificate failures"), "{out}");
    let (code, out, _) = call(&["sweep", "--ring", "GF(2)", "--n", "2", "--jobs", "2", "--out", "-"]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["total"], 16);
    assert_eq!(doc["certificate_failures"], 0);
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    for body in [
        "{",
        r#"{"ring": "Q/4", "rows": [[1]]}"#,
        r#"{"ring": "Z/4", "rows": [[1, 2]]}"#,
        r#"{"ring": "Z/4[x]/(x^2+x+1)", "rows": [[1]]}"#,
    ] {
        let a = write(&dir, "a.json", body);
        let (code, _, err) = call(&["decompose", "--input", &a]);
        assert_eq!(code, EXIT_MALFORMED, "{body}: {err}");
    }
    let (code, _, err) = call(&["sweep", "--ring", "Z/4[x", "--n", "1"]);
    assert_eq!(code, EXIT_MALFORMED);
    assert!(err.contains("position"), "{err}");
    assert_eq!(call(&["decompose"]).0, EXIT_MALFORMED);
    assert_eq!(call(&["frobnicate"]).0, EXIT_MALFORMED);
    assert_eq!(call(&["decompose", "--input", "/nonexistent/a.json"]).0, EXIT_MALFORMED);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"ring": "Z/8", "rows": [[2]]}"#);
    let bin = Path::new(env!("CARGO_BIN_EXE_potentsq"));
    let status = Command::new(bin)
        .args(["oracle-search", "--input", &a, "--max-nil-index", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_NOT_FOUND));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&help.stdout).contains("oracle-search"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decompose_verify_round_trip(
        spec in prop::sample::select(vec!["Z/4", "Z/9", "Z/8", "Z/12", "GF(3)", "GF(2^2)", "F2[t]/(t^2)"]),
        n in 1usize..4,
        seed in any::<u64>(),
    ) {
        let dir = TempDir::new().unwrap();
        let ring = potentsq::parse::parse_ring(spec).unwrap();
        let m = common::random_matrix(&ring, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let a = write(&dir, "a.json", &matrix_to_json(&m));
        let d = dir.path().join("d.json");
        let (code, _, _) = call(&["decompose", "--input", &a, "--out", d.to_str().unwrap()]);
        prop_assert_eq!(code, EXIT_OK);
        let (code, out, _) = call(&["verify", "--input", d.to_str().unwrap()]);
        prop_assert_eq!(code, EXIT_OK, "{}", out);
    }
}
