use std::process::{Command, Output};

use serde_json::Value;

fn hiccup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hiccup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn generate_prints_terms() {
    let o = hiccup(&["generate", "--params", "1,1,3,2", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 4 6 8 11\n");

    let o = hiccup(&["--format", "json", "generate", "--params", "0,2,4,2", "--count", "3"]);
    assert_eq!(json(&o)["terms"], serde_json::json!([2, 6, 8]));
}

#[test]
fn derive_outputs() {
    let o = hiccup(&["derive", "--params", "0,2,4,2", "--what", "morphism"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0->01, 1->0001"), "{}", stdout(&o));

    let o = hiccup(&["derive", "--params", "1,1,3,2", "--what", "beatty"]);
    assert!(stdout(&o).contains("floor((1 + sqrt(2))*n - sqrt(2)/2)"), "{}", stdout(&o));

    let o = hiccup(&["derive", "--params", "0,1,1,3", "--what", "beatty"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn verify_all_reports_every_entry() {
    let o = hiccup(&["--format", "json", "verify", "--all", "--horizon", "10000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 26);
    for r in reports {
        assert_eq!(r["recursion"]["status"], "PASS");
        assert_eq!(r["morphic"]["status"], "PASS");
        assert_ne!(r["beatty"]["status"], "FAIL");
        assert_ne!(r["cfrac"]["status"], "FAIL");
    }
}

#[test]
fn verify_single_entry_text() {
    let o = hiccup(&["verify", "--entry", "A086377", "--horizon", "2000", "--cfrac-horizon", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A086377"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["generate", "--params", "1,1,3", "--count", "5"][..],
        &["generate", "--params", "0,1,2,2", "--count", "5"],
        &["verify", "--entry", "A999999"],
        &["verify", "--entry", "nope"],
        &["frobnicate"],
        &["verify"],
    ] {
        let o = hiccup(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = hiccup(&["verify", "--entry", "A999999"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hint"));
}

#[test]
fn bfile_round_trip_through_infer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b086377.txt");
    let path_str = path.to_str().unwrap();
    let o = hiccup(&["generate", "--params", "1,1,3,2", "--count", "50", "--bfile", path_str]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("1 1\n2 4\n3 6\n"));
    assert!(text.ends_with('\n'));

    let o = hiccup(&["--format", "json", "infer", "--bfile", path_str]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["params"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p["j"] == 1 && p["x"] == 1 && p["y"] == 3 && p["z"] == 2));
    assert!(v["catalog"].as_array().unwrap().iter().any(|id| id == "A086377"));

    std::fs::write(&path, "1 1\n3 6\n").unwrap();
    assert_eq!(hiccup(&["infer", "--bfile", path_str]).status.code(), Some(2));
}

#[test]
fn represent_examples() {
    assert_eq!(stdout(&hiccup(&["represent", "--n", "39"])), "1321\n");
    assert_eq!(stdout(&hiccup(&["represent", "--an", "10"])), "28 1200\n");
    let v = json(&hiccup(&["--format", "json", "represent", "--an", "10"]));
    assert_eq!(v["n_representation"], "120");
    assert_eq!(v["value"], 28);
}

#[test]
fn conjecture_reports() {
    let o = hiccup(&["--format", "json", "conjecture", "bds", "--j", "2", "--horizon", "100", "--precision", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["j", "horizon", "agreements", "mismatches", "min_positive_margin", "runtime"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["agreements"], 100);

    let o = hiccup(&["conjecture", "wythoff-s1", "--precision", "15", "--horizon", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s_1 = 1.910418439737903"));
    assert!(stdout(&o).contains("CONJECTURE"));

    let o = hiccup(&["conjecture", "bds", "--j", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sequential_flag_matches() {
    let a = hiccup(&["--format", "json", "verify", "--entry", "A284753", "--horizon", "3000"]);
    let b = hiccup(&["--sequential", "--format", "json", "verify", "--entry", "A284753", "--horizon", "3000"]);
    let strip = |o: &Output| {
        let mut v = json(o);
        v["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
}
