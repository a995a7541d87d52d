mod common;

use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use vgbs::cli::{parse_word, parse_word_list, run_command};
use vgbs::fixtures;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = run_command(std::iter::once("vgbs").chain(args.iter().copied()));
    let v: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    (out.code, v)
}

#[test]
fn validate_accepts_fixtures() {
    for name in ["bs12", "bs23", "klein", "amalg", "z2", "f2", "z4f2"] {
        let (code, v) = run(&["validate", &fixture(name)]);
        assert_eq!((code, v["kind"].as_str()), (0, Some("valid")), "{name}: {v}");
    }
}

#[test]
fn validate_rejects_a_bad_injection() {
    let dir = std::env::temp_dir().join(format!("vgbs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"vertices":[{"id":"v0","rank":1}],"edges":[
            {"id":"e1","from":"v0","to":"v0","rank":1,"inj_initial":[[0]],"inj_terminal":[[2]],"reverse":"e1r"},
            {"id":"e1r","from":"v0","to":"v0","rank":1,"inj_initial":[[2]],"inj_terminal":[[0]],"reverse":"e1"}]}"#,
    )
    .unwrap();
    let (code, v) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "invalid");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn trivial_and_reduce() {
    let (code, v) = run(&["trivial", &fixture("bs12"), "Te1 xv0(2) te1 xv0(-1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], true);
    let (_, v) = run(&["trivial", &fixture("bs12"), "te1 xv0(1)"]);
    assert_eq!(v["value"], false);
    let (code, v) = run(&["reduce", &fixture("bs12"), "te1 xv0(1) Te1"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "reduced_form");
}

#[test]
fn length_reports_both_kinds() {
    let (_, v) = run(&["length", &fixture("bs12"), "te1 xv0(1) Te1"]);
    assert_eq!(v["kind"], "elliptic");
    let (_, v) = run(&["length", &fixture("f2"), "te1 te2"]);
    assert_eq!(v["kind"], "hyperbolic");
    assert_eq!(v["length"], 2);
}

#[test]
fn axis_and_centralizer() {
    let (_, v) = run(&["axis", &fixture("bs12"), "xv0(1)", "te1"]);
    assert_eq!(v["kind"], "negative_half_line");
    assert_eq!(v["position"], 0);
    let (_, v) = run(&["axis", &fixture("klein"), "xv0(1)", "te1"]);
    assert_eq!(v["kind"], "whole_axis");
    let (code, v) = run(&["centralizer", &fixture("klein"), "te1 te1"]);
    assert_eq!(code, 0);
    assert_eq!(v["h_prime"], "te1");
    assert_eq!(v["e_generators"], serde_json::json!([[1]]));
}

#[test]
fn conjugate_kinds_and_exit_codes() {
    let (code, v) = run(&["conjugate", &fixture("bs12"), "[te1, xv0(1)]", "[te1, xv0(2)]"]);
    assert_eq!((code, v["kind"].as_str(), v["witness"].as_str()), (0, Some("conjugate"), Some("te1")));
    let (code, v) = run(&["conjugate", &fixture("bs12"), "[te1, xv0(1)]", "[te1, xv0(3)]"]);
    assert_eq!((code, v["kind"].as_str()), (0, Some("not_conjugate")));
    let (code, v) = run(&["conjugate", &fixture("klein"), "[te1, xv0(1)]", "[te1, xv0(3)]"]);
    assert_eq!((code, v["kind"].as_str()), (2, Some("reduced_to_polycyclic")));
    let (code, v) = run(&["conjugate", &fixture("z4f2"), "[xv0(1,0,0,0)]", "[xv0(2,1,0,0)]"]);
    assert_eq!((code, v["kind"].as_str()), (2, Some("elliptic_unsupported")));
    let (code, v) = run(&["conjugate", &fixture("bs23"), "[xv0(2)]", "[xv0(3)]"]);
    assert_eq!((code, v["kind"].as_str()), (0, Some("conjugate")));
}

#[test]
fn tiny_budget_is_inconclusive() {
    let (code, v) = run(&["--budget", "1", "conjugate", &fixture("bs12"), "[xv0(1)]", "[xv0(1024)]"]);
    assert_eq!((code, v["kind"].as_str()), (2, Some("inconclusive")), "{v}");
}

#[test]
fn errors_exit_one_with_offsets() {
    let (code, v) = run(&["trivial", &fixture("bs12"), "xv0(1) tq"]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "error");
    assert_eq!(v["offset"], 8);
    let (code, v) = run(&["trivial", "/nonexistent/graph.json", "xv0(1)"]);
    assert_eq!((code, v["kind"].as_str()), (1, Some("error")));
    let (code, _) = run(&["conjugate", &fixture("bs12"), "[xv0(1)]", "[xv0(1), xv0(2)]"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn binary_prints_json_and_sets_status() {
    let out = Command::new(env!("CARGO_BIN_EXE_vgbs"))
        .args(["conjugate", &fixture("z4f2"), "[xv0(1,0,0,0)]", "[xv0(2,1,0,0)]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "elliptic_unsupported");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_start().starts_with("{\"kind\""), "{text}");
}

#[test]
fn word_lists_tolerate_spacing() {
    let g = fixtures::bs12();
    let l = parse_word_list("  [ te1 ,xv0(1)  , 1 ]", g.graph()).unwrap();
    assert_eq!(l.len(), 3);
    assert!(g.is_trivial(&l[2]));
}

proptest! {
    #[test]
    fn rendered_words_parse_back(f in 0usize..7, seed: u64, len in 0usize..10) {
        let (_, g) = fixtures::all().swap_remove(f);
        let w = g.normalize(&common::random_word(&g, &mut common::rng(seed), len, 5));
        let text = g.render(&w);
        let back = parse_word(&text, g.graph()).unwrap();
        prop_assert_eq!(g.normalize(&back), w);
    }
}
