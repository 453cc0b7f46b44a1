//! The `qpv` binary: exit codes, report schema and determinism.

use std::process::Command;

fn qpv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qpv")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn info_reports_dimensions_and_profile() {
    let (code, out, _) = qpv(&["info", "-t", "A", "-r", "3", "-n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("n=4") && out.contains("(H0,H0)=4") && out.contains("profile [1, 1, 2, 1, 1]"));
    let (code, out, _) = qpv(&["info", "-t", "A", "-r", "1", "-n", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("n=1"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qpv(&["info", "-t", "A", "-r", "3", "-n", "7"]).0, 2);
    assert_eq!(qpv(&["info", "-t", "B", "-r", "3", "-n", "3"]).0, 2);
    assert_eq!(qpv(&["info", "-t", "G", "-r", "2", "-n", "1"]).0, 2);
    assert_eq!(qpv(&["verify", "-t", "A", "-r", "2", "-n", "1", "--suite", "everything"]).0, 2);
    assert_eq!(qpv(&["verify", "-t", "A", "-r", "2", "-n", "1", "--mode", "fast"]).0, 2);
    assert_eq!(qpv(&["verify", "-t", "A", "-r", "2", "-n", "1", "--max-degree", "0"]).0, 2);
    assert_eq!(qpv(&["frobnicate"]).0, 2);
}

#[test]
fn verify_emits_a_passing_report() {
    let (code, out, _) = qpv(&["verify", "-t", "A", "-r", "2", "-n", "1", "--suite", "quadratic"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["convention"]["t0_sign"], -1);
    assert_eq!(v["convention"]["d_root"], 6);
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass" && c["elapsed_ms"].is_u64()));
}

#[test]
fn full_verification_of_a3() {
    let (code, out, _) = qpv(&["verify", "-t", "A", "-r", "3", "-n", "2", "--suite", "all", "--max-degree", "5"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn sampled_reports_are_reproducible() {
    let args = ["verify", "-t", "A", "-r", "3", "-n", "2", "--suite", "calculus", "--mode", "sampled", "--seed", "9"];
    let strip = |s: String| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = 0.into();
        }
        v
    };
    let (c1, a, _) = qpv(&args);
    let (c2, b, _) = qpv(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(strip(a), strip(b));
}

#[test]
fn build_is_deterministic_and_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        assert_eq!(qpv(&["build", "-t", "A", "-r", "2", "-n", "1", "--out", p.to_str().unwrap()]).0, 0);
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["presentation"]["rules"].as_array().unwrap().len(), 1);
    for key in ["datum", "presentation", "calculus", "braiding_spectrum"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let bad = dir.path().join("missing").join("x.json");
    assert_eq!(qpv(&["build", "-t", "A", "-r", "2", "-n", "1", "--out", bad.to_str().unwrap()]).0, 1);
}
