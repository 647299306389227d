use std::process::{Command, Output};

use serde_json::Value;

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json", "--no-timing"];
    full.extend_from_slice(args);
    let out = omega(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn bound_reports() {
    let (code, v) = json(&["bound", "--n", "16"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["a_n"], "2304");
    assert_eq!(v["results"]["status"], "theorem");
    assert_eq!(v["results"]["chromatic_lower_bound"], "29");

    let (_, v) = json(&["bound", "--n", "24"]);
    assert_eq!(v["results"]["a_n"], "178208");
    assert_eq!(v["results"]["status"], "verified via SDP (cited)");

    let (_, v) = json(&["bound", "--n", "3"]);
    assert_eq!(v["results"]["alpha"], "8");
    assert_eq!(v["results"]["status"], "edgeless");

    let (_, v) = json(&["bound", "--n", "40"]);
    assert_eq!(v["results"]["status"], "conjectured");
    assert_eq!(v["results"]["alpha"], Value::Null);
    assert_eq!(v["results"]["ratio_bound_consistent"], true);

    let (code, v) = json(&["bound", "--n", "0"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "precondition");
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["table", "--max-k", "5", "--n", "24"][..],
        &["certify", "--k", "4"],
        &["construct", "--n", "24", "--seed", "9", "--trials", "20000"],
        &["alpha", "--n", "6"],
    ] {
        for format in ["json", "text", "csv"] {
            let mut full = vec!["--no-timing", "--format", format];
            full.extend_from_slice(args);
            let a = omega(&full);
            let b = omega(&full);
            assert!(a.status.success(), "{args:?}");
            assert_eq!(a.stdout, b.stdout, "{args:?} {format}");
        }
    }
}

#[test]
fn table_formats() {
    let out = omega(&[
        "--no-timing",
        "--format",
        "csv",
        "table",
        "--max-k",
        "4",
        "--n",
        "24",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,k,a_n,status,certified_bound,chromatic_lower_bound,ratio_bound\n\
         4,2,4,theorem,4,4,4/1\n\
         8,3,32,theorem,32,8,32/1\n\
         16,4,2304,theorem,2304,29,4096/1\n\
         24,,178208,verified via SDP (cited),,,2097152/3\n"
    );
    let (_, v) = json(&["table", "--max-k", "4"]);
    let sizes: Vec<&str> = v["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["a_n"].as_str().unwrap())
        .collect();
    assert_eq!(sizes, ["4", "32", "2304"]);
    let (code, _) = json(&["table", "--max-k", "7"]);
    assert_eq!(code, 3);
}

#[test]
fn construct_and_certify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s8.txt");
    let p = path.to_str().unwrap();
    let (code, v) = json(&["construct", "--n", "8", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verification"]["mode"], "exact");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 32);
    assert!(text.lines().all(|l| l.len() == 8));
    assert!(text.starts_with("++++++++\n"));

    let (code, v) = json(&["certify", "--k", "3", "--set", p]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["equality"], true);
    assert_eq!(v["results"]["total_bound"], "32");
    assert_eq!(v["results"]["certificate"]["coefficients"][1], "-1/4");
}

#[test]
fn certify_rejects_dependent_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "# orthogonal pair\n++++++++\n++++----\n").unwrap();
    let (code, v) = json(&["certify", "--k", "3", "--set", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["valid"], false);
    assert_eq!(v["results"]["certificate"]["witness"]["independent"], false);

    std::fs::write(&path, "+++\n++\n").unwrap();
    let (code, v) = json(&["certify", "--k", "3", "--set", path.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn certify_without_witness_and_trivial_case() {
    let (code, v) = json(&["certify", "--k", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["total_bound"], "14288896");
    let (code, v) = json(&["certify", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["trivial"], true);
    let (code, _) = json(&["certify", "--k", "9"]);
    assert_eq!(code, 3);
}

#[test]
fn sampled_mode_needs_seed() {
    let (code, v) = json(&["construct", "--n", "16", "--sampled"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "precondition");
    let (code, v) = json(&[
        "construct",
        "--n",
        "16",
        "--sampled",
        "--seed",
        "5",
        "--trials",
        "1000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["parameters"]["seed"], "5");
    assert_eq!(v["results"]["verification"]["pairs_checked"], "1000");
    let (code, _) = json(&["construct", "--n", "24", "--exact"]);
    assert_eq!(code, 3);
    let (code, _) = json(&["construct", "--n", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn alpha_command() {
    let (code, v) = json(&["alpha", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["alpha"], "32");
    assert_eq!(v["results"]["parity_class_alpha"], "16");
    let (_, v) = json(&["alpha", "--n", "4"]);
    assert_eq!(v["results"]["alpha"], "4");
    let (_, v) = json(&["alpha", "--n", "5"]);
    assert_eq!(v["results"]["alpha"], "32");
    let (code, v) = json(&["alpha", "--n", "9"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "guard_exceeded");
}

#[test]
fn spectral_check_command() {
    let (code, v) = json(&["spectral-check", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], true);
    let (code, v) = json(&["spectral-check", "--m", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["phi_spectral_form_k3"], true);
    let (code, _) = json(&["spectral-check", "--m", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn text_output_has_timing_unless_disabled() {
    let out = omega(&["bound", "--n", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: bound\n"));
    assert!(text.contains("elapsed_ms: "));
    let out = omega(&["--no-timing", "bound", "--n", "8"]);
    assert!(!String::from_utf8(out.stdout)
        .unwrap()
        .contains("elapsed_ms"));
}
