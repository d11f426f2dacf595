use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sagbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sagbi")).args(args).env_remove("SAGBI_THREADS").output().unwrap()
}

fn system(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", name].iter().collect();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn semimixed_summary() {
    let out = sagbi(&["solve", &system("semimixed.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("• 6 paths tracked"), "{text}");
    assert!(text.contains("• 6 non-singular solutions"), "{text}");
    assert!(text.contains("completed with 6 solutions"), "{text}");
}

#[test]
fn base_locus_warns_with_exit_two() {
    let out = sagbi(&["solve", &system("base_locus.json"), "--base-locus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("will not find all the solutions"));
    assert!(stdout(&out).contains("Result with 4 solutions"), "{}", stdout(&out));
    let plain = sagbi(&["solve", &system("base_locus.json")]);
    assert_eq!(plain.status.code(), Some(2));
    assert!(stdout(&plain).contains("Result with 2 solutions"));
}

#[test]
fn malformed_polynomial_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = r#"{"variables": ["x", "y"], "blocks": [{"generators": ["x", "y^", "1"]}],
                   "coefficients": [[[1, 2, 3], [4, 5, 6]]]}"#;
    std::fs::write(&path, text).unwrap();
    let out = sagbi(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("generator 2 \"y^\": parse error at byte 2"), "{}", stderr(&out));
}

#[test]
fn degree_and_mixed_volume() {
    let out = sagbi(&["degree", &system("octic.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("deg_phi=8 deg_phi0=8"));
    let out = sagbi(&["mixed-volume", &system("simplex.json")]);
    assert_eq!(stdout(&out).trim(), "mixed_volume=1");
    let out = sagbi(&["mixed-volume", &system("gr24.json"), "--leaders"]);
    assert_eq!(stdout(&out).trim(), "mixed_volume=2");
}

#[test]
fn detect_weight_json() {
    let out = sagbi(&["detect-weight", &system("semimixed.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], Value::Bool(true));
    assert_eq!(v["weight"].as_array().unwrap().len(), 3);
}

#[test]
fn weight_flags() {
    let file = system("semimixed.json");
    let out = sagbi(&["solve", &file, "--weight=1,2,3", "--negate-weight"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SAGBI basis"), "{}", stderr(&out));
    let out = sagbi(&["solve", &file, "--weight=1,2,3", "--negate-weight", "--force", "--no-degree-check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("weight: [-1, -2, -3] (NOT verified)"));
    let out = sagbi(&["solve", &file, "--weight=1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generated_system_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("gr25.json");
    let sys = sys.to_str().unwrap();
    let out = sagbi(&["gen", "grassmannian", "2", "5", "--seed", "3", "-o", sys]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = sagbi(&["--threads", "2", "solve", sys, "--seed", "8", "--format", "json", "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v, serde_json::from_str::<Value>(&stdout(&out)).unwrap());
        v.as_object_mut().unwrap().remove("timing");
        (path, v)
    };
    let (first, a) = run("a.json");
    let (_, b) = run("b.json");
    assert_eq!(a, b);
    assert_eq!(a["summary"]["nonsingular"], Value::from(5));

    let out = sagbi(&["verify", sys, first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let mut tampered = a.clone();
    tampered["solutions"][0]["point"][0][0] = Value::from(7.5);
    tampered["timing"] = serde_json::json!({"weight": 0.0, "degree": 0.0, "start": 0.0, "tracking": 0.0, "base_locus": 0.0});
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, tampered.to_string()).unwrap();
    let out = sagbi(&["verify", sys, bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resonator_generator() {
    let out = sagbi(&["gen", "resonator", "1", "2", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["u1", "v1"]));
    assert_eq!(v["blocks"][0]["generators"].as_array().unwrap().len(), 5);
}

#[test]
fn bench_subset_passes() {
    let out = sagbi(&["bench", "--only", "gr(2,4)", "--only", "octic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}
