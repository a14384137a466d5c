#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use artin_core::graph::parse_graph;
use artin_core::polyhedron::{complement_polyhedron, polyhedron_contains, SphericalPolyhedron};
use artin_sigma::{run, strip_timing, Outcome};
use common::random_character;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("artin-sigma").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error_kind(out: &Outcome) -> String {
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn sigma1_reports() {
    let r = json(&cli(&["sigma1", &fixture("f3.artin"), "--char", "a=1,b=-1"]));
    assert_eq!(r["status"], "out");
    assert_eq!(r["provenance"], "theorem_a");
    let r = json(&cli(&["sigma1", &fixture("f3.artin"), "--char", "a=1,b=1/2"]));
    assert_eq!(r["status"], "in");
    // The character can come from the file itself.
    let r = json(&cli(&["sigma1", &fixture("f1.artin")]));
    assert_eq!(r["status"], "out_conjectural");
    let r = json(&cli(&["sigma1", &fixture("f1.artin"), "--mode", "strict"]));
    assert_eq!(r["mode"], "strict");
    let text = cli(&["sigma1", &fixture("f3.artin"), "--char", "a=1,b=2", "--format", "text"]);
    assert_eq!(
        text.stdout.lines().next(),
        Some("IN Sigma^1 (Meier–Meinert–VanWyk sufficient)")
    );
}

#[test]
fn hypothesis_and_kt_reports() {
    let r = json(&cli(&["hypothesis", &fixture("f4.artin")]));
    assert_eq!(r["holds"], false);
    assert_eq!(r["witness_cycle"], serde_json::json!(["a", "b", "c", "d"]));
    let r = json(&cli(&["hypothesis", &fixture("f5.artin")]));
    assert_eq!(r["holds"], true);
    assert!(r["witness_cycle"].is_null());

    let r = json(&cli(&["kt-certify", &fixture("f5.artin"), "--char", "a=1,b=-1,c=1"]));
    assert_eq!(r["conclusion"], "not_finitely_generated");
    assert_eq!((r["rank"].as_u64(), r["generators"].as_u64()), (Some(1), Some(2)));
    let text = cli(&[
        "kt-certify",
        &fixture("f5.artin"),
        "--char",
        "a=1,b=-1,c=1",
        "--format",
        "text",
    ]);
    assert_eq!(text.stdout.trim(), "NOT f.g. over ZKer(chi): rank 1 < 2 generators");
    let r = json(&cli(&[
        "kt-certify",
        &fixture("f5.artin"),
        "--char",
        "a=1/2,b=-1/2,c=1/2",
        "--bipartition",
        "b",
    ]));
    assert_eq!(r["v_side"], serde_json::json!(["b"]));
}

#[test]
fn fox_jacobian_groebner_reports() {
    let r = json(&cli(&["fox", "--word", "[x,y]", "--gen", "x"]));
    assert_eq!(r["derivative"], "-x^-1 + x^-1 y^-1");
    assert_eq!(r["terms"].as_array().unwrap().len(), 2);

    let r = json(&cli(&["jacobian", &fixture("f1.artin")]));
    assert_eq!(r["rows"].as_array().unwrap().len(), 6);
    assert_eq!(r["chain_condition"], true);

    let r = json(&cli(&["groebner", "--vars", "x,y", "--gens", "x^2-y", "x^3-x"]));
    assert_eq!(r["unit_ideal"], false);
    assert_eq!(r["laurent"], false);
    let r = json(&cli(&["groebner", "--vars", "x", "--gens", "x", "--laurent"]));
    assert_eq!(r["unit_ideal"], true);
    let r = json(&cli(&["groebner", "--vars", "x", "--gens", "x"]));
    assert_eq!(r["unit_ideal"], false);
}

#[test]
fn exit_codes_and_error_documents() {
    let out = cli(&["sigma1", "/nonexistent/graph.artin", "--char", "a=1"]);
    assert_eq!(out.code, 2);
    assert_eq!(error_kind(&out), "input");
    let out = cli(&["sigma1", &fixture("f3.artin"), "--char", "a=1,z=2"]);
    assert_eq!(out.code, 2);
    let out = cli(&["sigma1", &fixture("f3.artin"), "--char", "a=0,b=0"]);
    assert_eq!(out.code, 2);
    let out = cli(&["kt-certify", &fixture("f4.artin"), "--char", "a=1,b=-1,c=1,d=-1"]);
    assert_eq!(out.code, 1);
    assert_eq!(error_kind(&out), "math");
    let out = cli(&["kt-certify", &fixture("f2.artin"), "--char", "u=1,v=-1,w=1"]);
    assert_eq!(out.code, 1);
    let out = cli(&["groebner", "--vars", "x", "--gens", "x^-1+1"]);
    assert_eq!(out.code, 2);
    let out = cli(&["fox", "--word", "x^", "--gen", "x"]);
    assert_eq!(out.code, 2);
    let out = cli(&["frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("kt-certify"));
}

#[test]
fn reports_are_deterministic() {
    let f1 = fixture("f1.artin");
    let f5 = fixture("f5.artin");
    let runs: Vec<Vec<&str>> = vec![
        vec!["sigma1", &f1],
        vec!["polyhedron", &f1],
        vec!["jacobian", &f5],
        vec!["groebner", "--vars", "u,v", "--laurent", "--gens", "1+u*v,1+u"],
    ];
    for args in runs {
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(strip_timing(&a.stdout), strip_timing(&b.stdout));
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert!(v["meta"]["input_sha256"].as_object().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn polyhedron_document_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for name in ["f1.artin", "f3.artin", "f5.artin"] {
        let path = fixture(name);
        let g = Arc::new(parse_graph(&std::fs::read_to_string(&path).unwrap()).unwrap());
        let doc = json(&cli(&["polyhedron", &path]));
        let parsed = SphericalPolyhedron::from_json(&doc, &g).unwrap();
        let direct = complement_polyhedron(&g).unwrap();
        assert_eq!(parsed, direct);
        for _ in 0..100 {
            let chi = random_character(&mut rng, &g);
            assert_eq!(
                polyhedron_contains(&parsed, &chi).unwrap(),
                polyhedron_contains(&direct, &chi).unwrap()
            );
        }
    }
    let r = json(&cli(&["polyhedron", &fixture("f3.artin"), "--char", "a=1,b=-1"]));
    assert_eq!(r["contains"], true);
}

#[test]
fn binary_honours_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_artin-sigma"))
        .args(["polyhedron", &fixture("f1.artin")])
        .env("ARTIN_SIGMA_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["pieces"].is_array());
    let bad = Command::new(env!("CARGO_BIN_EXE_artin-sigma"))
        .args(["hypothesis", "/nonexistent"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
