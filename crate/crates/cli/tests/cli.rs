use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use medcons_cli::{run, Fingerprint, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
use medcons_core::benzenoid::{parse_cells, write_cells};
use medcons_core::consensus::TabulatedConsensus;
use medcons_core::graph::generators::from_spec;
use medcons_core::graph::io::parse_graph;
use medcons_core::hypergraph::Hypergraph;

fn args(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

fn go(dir: &Path, s: &[&str]) -> (i32, Value) {
    let r = run(&args(s), dir);
    let json: Value = serde_json::from_str(&r.json().expect("json report")).unwrap();
    (r.code, json)
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn classify_hexagon() {
    let (code, j) = go(Path::new("."), &["classify", "cycle:6"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(j["schema"], 1);
    let keys: Vec<&String> = j["report"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["bipartite", "bipartite_helly", "helly", "median", "meshed", "modular", "weakly_modular", "witnesses"]);
    assert_eq!(j["report"]["bipartite"], true);
    assert_eq!(j["report"]["modular"], false);
    assert!(j["report"]["witnesses"]["modular"].is_object());
    assert_eq!(j["graph"]["vertices"], 6);
}

#[test]
fn l6_on_alternating_triple() {
    let (code, j) = go(Path::new("."), &["consensus", "l6", "--profile", "0 2 4"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(j["report"]["value"], serde_json::json!([0]));
    assert_eq!(j["report"]["median_set"], serde_json::json!([0, 2, 4]));
}

#[test]
fn double_pairing_on_b4_reports_a_witness_or_a_pass() {
    let (code, j) = go(Path::new("."), &["pairing", "double", "bn:4"]);
    let holds = j["report"]["holds"].as_bool().unwrap();
    assert_eq!(code, if holds { EXIT_PASS } else { EXIT_FAIL });
    assert_eq!(holds, j["report"]["witness"].is_null());
    if !holds {
        // the witness profile is in input format and fed back in
        let p = j["report"]["witness"]["profile"].as_str().unwrap();
        let (c2, j2) = go(Path::new("."), &["pairing", "check", "bn:4", "--profile", p]);
        assert_eq!(c2, EXIT_FAIL, "{j2}");
    }
}

#[test]
fn failing_property_exits_one_with_witness() {
    let (code, j) = go(Path::new("."), &["pairing", "search", "hypercube:3", "--support", "4", "--mult", "1"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(j["passed"], false);
    assert!(j["report"]["witness"].is_string());
    assert_eq!(j["budget"]["max_support"], 4);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = Path::new(".");
    for bad in [
        &["frobnicate"][..],
        &["classify", "no/such/file.txt"],
        &["median", "cycle:6", "--profile", "9"],
        &["pairing", "check", "cycle:6", "--profile", "0"],
        &["pairing", "search", "hypercube:3", "--support", "8", "--mult", "2", "--cap", "10"],
        &["consensus", "check", "cycle:6", "--axiom", "Q"],
        &["consensus", "compare", "cycle:4", "l6", "med"],
    ] {
        let r = run(&args(bad), dir);
        assert_eq!(r.code, EXIT_ERROR, "{bad:?}");
        let j: Value = serde_json::from_str(&r.json().unwrap()).unwrap();
        assert!(j["error"].is_string(), "{bad:?}");
    }
}

#[test]
fn help_prints_no_report() {
    let r = run(&args(&["--help"]), Path::new("."));
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.report.is_none());
    assert!(r.summary.contains("pairing"));
}

#[test]
fn reports_are_byte_stable() {
    let a = run(&args(&["verify-connected-medians", "cycle:6", "--power", "2"]), Path::new(".")).json();
    let b = run(&args(&["verify-connected-medians", "cycle:6", "--power", "2", "--sequential"]), Path::new(".")).json();
    let a: Value = serde_json::from_str(&a.unwrap()).unwrap();
    let b: Value = serde_json::from_str(&b.unwrap()).unwrap();
    assert_eq!(a["report"], b["report"]);
    let c = run(&args(&["classify", "bhat:4"]), Path::new(".")).json();
    let d = run(&args(&["classify", "bhat:4"]), Path::new(".")).json();
    assert_eq!(c, d);
    let t = go(Path::new("."), &["classify", "cycle:5", "--timing"]).1;
    assert!(t["elapsed_ms"].is_number());
}

#[test]
fn written_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let (code, j) = go(d, &["construct", "bn", "4", "--out", "b4.txt"]);
    assert_eq!(code, EXIT_PASS);
    let g = parse_graph(&fs::read_to_string(d.join("b4.txt")).unwrap()).unwrap();
    assert_eq!(g, from_spec("bn:4").unwrap());
    let (_, from_file) = go(d, &["classify", "b4.txt"]);
    assert_eq!(from_file["graph"], j["graph"]);

    let (_, j) = go(d, &["construct", "counterexample", "--kind", "double", "--out", "r.txt"]);
    let r = parse_graph(&fs::read_to_string(d.join("r.txt")).unwrap()).unwrap();
    assert_eq!(serde_json::to_value(Fingerprint::of(&r)).unwrap(), j["graph"]);
    let h = Hypergraph::parse(j["report"]["hypergraph"].as_str().unwrap()).unwrap();
    assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    fs::write(d.join("h.txt"), h.to_text()).unwrap();
    let (code, inc) = go(d, &["construct", "incidence", "h.txt", "--out", "inc.txt"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(inc["graph"], j["graph"]);

    let (_, t) = go(d, &["consensus", "tabulate-med", "kbip:2,3", "--max-len", "3", "--out", "t.txt"]);
    let text = fs::read_to_string(d.join("t.txt")).unwrap();
    assert_eq!(t["report"]["table"], text);
    let parsed = TabulatedConsensus::parse(&from_spec("kbip:2,3").unwrap(), &text).unwrap();
    assert_eq!(parsed.to_text(), text);

    fs::write(d.join("cells.txt"), "0 0\n1 0\n1 1\n").unwrap();
    let (code, b) = go(d, &["benzenoid", "build", "cells.txt", "--out", "bz.txt"]);
    assert_eq!(code, EXIT_PASS);
    let cells = parse_cells(b["report"]["cells"].as_str().unwrap()).unwrap();
    assert_eq!(write_cells(&cells), b["report"]["cells"].as_str().unwrap());
    assert_eq!(b["report"]["incomplete_hexagons"].as_array().unwrap().len(), 1);
    let bz = parse_graph(&fs::read_to_string(d.join("bz.txt")).unwrap()).unwrap();
    assert_eq!(bz.vertex_count(), 14);
    let (code, e) = go(d, &["benzenoid", "embed", "cells.txt"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(e["report"]["pairs_checked"], 14 * 13 / 2);
}

#[test]
fn local_check_maps_back_to_host_vertices() {
    let (code, j) = go(Path::new("."), &["pairing", "local", "path:5", "--vertex", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(j["report"]["ball"], serde_json::json!([0, 1, 2, 3, 4]));
    let (code, _) = go(Path::new("."), &["pairing", "local", "path:5", "--vertex", "9"]);
    assert_eq!(code, EXIT_ERROR);
}

#[test]
fn empty_manifest_passes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("m.toml"), "# nothing\n").unwrap();
    let (code, j) = go(dir.path(), &["corpus", "m.toml"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(j["report"]["entries"], 0);
}

#[test]
fn fabricated_table_fails_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    go(d, &["consensus", "tabulate-med", "path:3", "--max-len", "2", "--out", "good.txt"]);
    let good = fs::read_to_string(d.join("good.txt")).unwrap();
    // L(0, 2) = {1} breaks betweenness: I(0, 2) = {0, 1, 2}
    let bad = good.replace("0:1 2:1 | 0 1 2", "0:1 2:1 | 1");
    assert_ne!(bad, good);
    fs::write(d.join("bad.txt"), bad).unwrap();
    fs::write(
        d.join("m.toml"),
        r#"
[[entry]]
name = "stored table"
command = ["consensus", "check", "path:3", "--axiom", "B", "--table", "good.txt"]

[[entry]]
name = "fabricated table"
command = ["consensus", "check", "path:3", "--axiom", "B", "--table", "bad.txt"]
"#,
    )
    .unwrap();
    let (code, j) = go(d, &["corpus", "m.toml"]);
    assert_eq!(code, EXIT_FAIL);
    let results = j["report"]["results"].as_array().unwrap();
    assert_eq!(results[0]["ok"], true);
    assert_eq!(results[1]["ok"], false);
    let w = &results[1]["run"]["report"]["witness"];
    assert_eq!(w["kind"], "betweenness");
    assert_eq!((w["u"].as_u64(), w["v"].as_u64()), (Some(0), Some(2)));
}

#[test]
fn erroring_entry_makes_the_corpus_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("m.toml"),
        "[[entry]]\nname = \"ok\"\ncommand = [\"classify\", \"cycle:4\"]\n\n[[entry]]\nname = \"missing\"\ncommand = [\"classify\", \"gone.txt\"]\n",
    )
    .unwrap();
    assert_eq!(go(dir.path(), &["corpus", "m.toml"]).0, EXIT_ERROR);
    fs::write(dir.path().join("bad.toml"), "[[entry]]\nname = 3\n").unwrap();
    assert_eq!(go(dir.path(), &["corpus", "bad.toml"]).0, EXIT_ERROR);
}

#[test]
fn shipped_acceptance_corpus_passes() {
    let (code, j) = go(&repo_root(), &["corpus", "corpus/acceptance.toml"]);
    assert_eq!(code, EXIT_PASS, "{}", j["report"]["results"]);
    assert_eq!(j["report"]["entries"], j["report"]["as_expected"]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_medcons");
    let status = |a: &[&str]| Command::new(bin).args(a).output().unwrap();
    let ok = status(&["classify", "cycle:6"]);
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    let j: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(j["report"]["bipartite"], true);
    assert!(String::from_utf8_lossy(&ok.stderr).starts_with("PASS"));
    assert_eq!(status(&["pairing", "search", "hypercube:3", "--support", "4", "--mult", "1"]).status.code(), Some(EXIT_FAIL));
    assert_eq!(status(&["nope"]).status.code(), Some(EXIT_ERROR));
}
