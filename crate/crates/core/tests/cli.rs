use std::path::Path;
use std::process::{Command, Output};

use leech_core::hyperbolic::DeepHoleFile;
use serde_json::Value;

fn leech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leech")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn fixture() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/deep_hole_A1_24.json")
}

#[test]
fn list_has_23_labels() {
    let out = leech(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["list"].as_array().unwrap().len(), 23);
}

#[test]
fn construct_all_codewords_of_a24() {
    let out = leech(&["construct", "A24", "--codeword", "all", "--oracle", "--corollary"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["codewords"].as_array().unwrap().len(), 5);
}

#[test]
fn unknown_label_lists_valid_labels() {
    let out = leech(&["construct", "BADLABEL"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("D16E8") && err.contains("A1^24"), "{err}");
    assert_eq!(leech(&["construct", "A24", "--codeword", "5"]).status.code(), Some(2));
    assert_eq!(leech(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_exports_and_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = leech(&["--jobs", "1", "construct", "D24", "--codeword", "all", "--out", &format!("{d}/a")]);
    let b = leech(&["--jobs", "4", "construct", "D24", "--codeword", "all", "--out", &format!("{d}/b")]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| String::from_utf8_lossy(&o.stdout).replace(&format!("{d}/a"), "").replace(&format!("{d}/b"), "");
    assert_eq!(strip(&a), strip(&b));
    for name in ["D24_codeword0.json", "D24_codeword1.json"] {
        let x = std::fs::read(dir.path().join("a").join(name)).unwrap();
        assert_eq!(x, std::fs::read(dir.path().join("b").join(name)).unwrap());
    }

    let verified = leech(&["verify", &format!("{d}/a/D24_codeword0.json")]);
    assert_eq!(verified.status.code(), Some(0));
    assert_eq!(report(&verified)["certificate"]["rootless"], true);

    let exported = leech(&["export", "D24", "--out", d]);
    assert_eq!(exported.status.code(), Some(0));
    let niemeier = leech(&["verify", &format!("{d}/D24.json")]);
    assert_eq!(niemeier.status.code(), Some(1));
    assert_eq!(report(&niemeier)["certificate"]["root_count"], 1104);

    let gap = leech(&["construct", "E8^3", "--out", d, "--format", "gap", "--positive"]);
    assert_eq!(gap.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("E8_3_codeword0.g")).unwrap();
    assert!(text.contains("positive-definite"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(leech(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(leech(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn deep_hole_file_and_lattice_point() {
    let path = fixture();
    let out = leech(&["verify", "--deephole", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["deep_hole"]["xi0_count"], 48);
    assert_eq!(r["deep_hole"]["xi1_count"], 4096);

    let mut file = DeepHoleFile::read(&path).unwrap();
    for x in &mut file.center {
        *x = "0".into();
    }
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, file.to_json()).unwrap();
    let out = leech(&["verify", "--deephole", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["deep_hole"]["is_deep_hole"], false);
}
