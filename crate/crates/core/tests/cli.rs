use std::process::Command;

use minaff::cli::run_with;
use minaff::krtensor::{Certificate, ReplayReport, TripleConfig, TripleMode};
use minaff::minclass::Classification;
use minaff::{Diagram, Weight};
use serde_json::Value;

const D4_COHERENT: &str = r#"[{"node":1,"r":0,"m":2},{"node":3,"r":6,"m":1},{"node":4,"r":6,"m":3}]"#;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("minaff").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--no-header"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn incoherent_d4() -> String {
    let d = Diagram::d(4).unwrap();
    let lambda = Weight::from_coords(vec![1, 0, 1, 1]);
    let cfg = TripleConfig::incoherent(&d, 1, 3, &lambda, 0).unwrap();
    serde_json::to_string(&cfg).unwrap()
}

#[test]
fn roots_e6_has_36_rows() {
    let rows = json(&["roots", "E6"]);
    assert_eq!(rows.as_array().unwrap().len(), 36);
    let (code, out, _) = call(&["--format", "csv", "--no-header", "roots", "E6"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("index,height,a1,a2,a3,a4,a5,a6"));
    assert_eq!(lines.count(), 36);
    assert!(out.trim_end().ends_with("36,11,1,2,2,3,2,1"));
}

#[test]
fn dimtable_d4_full_support() {
    let rows = json(&["dimtable", "D4", r#"{"1":1,"3":1,"4":1}"#]);
    let find = |q: &str| {
        rows.as_array()
            .unwrap()
            .iter()
            .find(|r| r["quantity"] == q && r["part"] == "I")
            .map(|r| r["value"].clone())
            .unwrap()
    };
    assert_eq!(find("dim V(λ)_{λ−ϑ}"), 7);
    assert_eq!(find("#P_ϑ^λ"), 7);
    assert_eq!(find("dim W_{λ−ϑ}"), 12);
}

#[test]
fn kostant_accepts_both_payload_forms() {
    let a = json(&["kostant", "A3", "1,1,1"]);
    let b = json(&["kostant", "A3", r#"{"1":1,"2":1,"3":1}"#]);
    assert_eq!(a, b);
    assert_eq!(a["p"], 4);
}

#[test]
fn classify_reads_a_spec() {
    let v = json(&["classify", "D4", D4_COHERENT]);
    let cls: Classification = serde_json::from_value(v.clone()).unwrap();
    assert!(cls.is_order_two_coherent());
    assert_eq!(serde_json::to_value(&cls).unwrap(), v);
}

#[test]
fn kr_lweights_d4_interior_node() {
    let rows = json(&["kr-lweights", "D4", "2,0,1"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0]["monomial"], "Y[2,0]");
    assert!(rows[1..].iter().all(|r| r["right_negative"] == true));
}

#[test]
fn replay_incoherent_gives_xi_zero() {
    let cfg = incoherent_d4();
    let (code, out, _) = call(&["--no-header", "replay", &cfg]);
    assert_eq!(code, 0);
    assert!(out.contains("\"xi\": 0"));
    let rep: ReplayReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.mode, TripleMode::Incoherent);
    assert_eq!(rep.residual(), 0);
}

#[test]
fn replay_reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, incoherent_d4()).unwrap();
    let v = json(&["replay", path.to_str().unwrap()]);
    assert_eq!(v["xi"], 0);
}

#[test]
fn theorem_certificate_round_trips() {
    let (code, out, _) = call(&["--no-header", "theorem", "D4", D4_COHERENT]);
    assert_eq!(code, 0);
    let cert: Certificate = serde_json::from_str(&out).unwrap();
    assert!(cert.is_strict());
    let emitted: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(&cert).unwrap(), emitted);
    for key in ["config", "dominant_lweights", "dims", "xi", "verdict", "citations"] {
        assert!(emitted.get(key).is_some(), "{key}");
    }
}

#[test]
fn tensor_checks() {
    let v = json(&["tensor-check", "tpa", "--rank", "2", "--lambda", "1,0", "--s", "3", "--eta", "1"]);
    assert_eq!(v["reducible"], true);
    assert_eq!(v["witness"]["condition"], "top");
    let v = json(&["tensor-check", "tpd", "--rank", "4", "--i", "3", "--j", "4", "--mi", "1", "--mj", "1", "--exponent", "-4"]);
    assert_eq!(v["irreducible"], false);
    let v = json(&["tensor-check", "tpd", "--rank", "4", "--i", "3", "--j", "4", "--mi", "1", "--mj", "1", "--exponent", "2"]);
    assert_eq!(v["irreducible"], true);
}

#[test]
fn header_line_and_suppression() {
    let (_, with, _) = call(&["kostant", "A2", "1,1"]);
    let (_, without, _) = call(&["--no-header", "kostant", "A2", "1,1"]);
    assert_eq!(with.lines().next(), Some(concat!("# minaff ", env!("CARGO_PKG_VERSION"), " kostant")));
    assert_eq!(with.split_once('\n').unwrap().1, without);
}

#[test]
fn output_is_deterministic() {
    let args = ["theorem", "D4", D4_COHERENT];
    assert_eq!(call(&args), call(&args));
    let args = ["--format", "text", "dimtable", "E6", "1,1,0,0,0,1"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roots.csv");
    let (code, out, _) = call(&["--format", "csv", "--out", path.to_str().unwrap(), "roots", "A2"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# minaff"));
    assert_eq!(text.lines().count(), 1 + 1 + 3);
}

#[test]
fn domain_rejections_exit_one() {
    for args in [
        &["roots", "F4"][..],
        &["kostant", "A2", "1,1,1"],
        &["classify", "D4", "not-a-file.json"],
        &["theorem", "A3", r#"[{"node":1,"r":0,"m":1}]"#],
        &["--format", "csv", "theorem", "D4", D4_COHERENT],
        &["kr-lweights", "D4", "2,0"],
        &["frobnicate"],
        &["roots", "D4", "--bogus"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 1, "{args:?}: {out}{err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tensor-check"));
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn binary_exit_codes_and_env_depth() {
    let bin = env!("CARGO_BIN_EXE_minaff");
    let ok = Command::new(bin).args(["--no-header", "roots", "A3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["roots", "Q9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));

    let shallow = Command::new(bin)
        .env("MINAFF_DEPTH", "1")
        .args(["--no-header", "dimtable", "D4", "1,0,1,1"])
        .output()
        .unwrap();
    assert_eq!(shallow.status.code(), Some(0));
    let rows: Value = serde_json::from_slice(&shallow.stdout).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["part"].as_str().unwrap().len() <= 3));
}
