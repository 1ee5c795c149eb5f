use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn nilgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgraph"))
        .args(args)
        .env_remove("NILGRAPH_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn info_reports_star_basis() {
    let out = nilgraph(&["info", &fixture("star.graph")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["dims"]["abelian_factor"], 3);
    assert_eq!(r["dims"]["V"], 7);
    assert_eq!(r["center_perp"].as_array().unwrap().len(), 4);
    assert_eq!(r["abelian_factor_basis"][0], serde_json::json!([["1", "v11"], ["-1", "v13"]]));
}

#[test]
fn info_on_reversed_four_cycle_is_trivial() {
    let r = json(&nilgraph(&["info", &fixture("four_cycle_flipped.graph")]));
    assert_eq!(r["dims"]["abelian_factor"], 0);
    assert_eq!(r["script_a"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_input_exits_two_with_line_number() {
    let out = nilgraph(&["info", &fixture("malformed.graph")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = nilgraph(&["info", "/nonexistent/graph"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_is_seeded() {
    let f = fixture("uniform.graph");
    let a = nilgraph(&["classify", &f, "--samples", "5", "--seed", "3"]);
    let b = Command::new(env!("CARGO_BIN_EXE_nilgraph"))
        .args(["classify", &f, "--samples", "5"])
        .env("NILGRAPH_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 3);
    let c8 = json(&nilgraph(&["classify", &fixture("c8.graph")]));
    assert_eq!(c8["status"], "AlmostNonsingularCertified");
}

#[test]
fn family_emit_round_trips_through_info() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ds.graph");
    let dot = dir.path().join("ds.dot");
    let out = nilgraph(&[
        "family",
        "double-star",
        "--first",
        "2,2",
        "--second",
        "2",
        "--bridge-dir",
        "-1",
        "--emit",
        path.to_str().unwrap(),
        "--emit-dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["prediction"]["abelian_dim"], 3);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let info = json(&nilgraph(&["info", path.to_str().unwrap()]));
    assert_eq!(info["abelian_factor_basis"], r["prediction"]["abelian_basis"]);
}

#[test]
fn family_from_json_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"family": "cycle", "n": 5, "orientation": [1, 1, 1, 1, 1], "labels": ["Z", "Z", "Z", "Z", "Z"]}"#)
        .unwrap();
    let r = json(&nilgraph(&["family", "json", spec.to_str().unwrap()]));
    assert_eq!(r["prediction"]["abelian_dim"], 1);
    let bad = nilgraph(&["family", "star", "--multiplicities", "1,2"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = nilgraph(&["family", "cycle", "--orientation", "+x+"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn schreier_commands() {
    let f = fixture("schreier.graph");
    let classes = json(&nilgraph(&["schreier", "classes", &f]));
    assert_eq!(classes["classes"], serde_json::json!([["v1", "v2", "v5"], ["v3", "v4"]]));
    let xi = json(&nilgraph(&["schreier", "xi", &f]));
    assert_eq!(xi["xi"][1], serde_json::json!([["1", "v3"], ["1", "v4"]]));
    assert_eq!(nilgraph(&["schreier", "xi", &fixture("star.graph")]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_fixtures() {
    for f in ["three_vertex.graph", "schreier.graph", "star.graph", "tree.graph", "uniform.graph"] {
        let out = nilgraph(&["verify", &fixture(f)]);
        assert_eq!(out.status.code(), Some(0), "{f}");
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn census_small_cycles() {
    let out = nilgraph(&["census", "--family", "cycle", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rows = r["rows"].as_array().unwrap();
    let n4: Vec<&Value> = rows.iter().filter(|row| row["vertices"] == 4).collect();
    assert_eq!(n4.len(), 16);
    assert!(n4.iter().all(|row| row["abelian_dim"] == 0 || row["abelian_dim"] == 2));
    assert_eq!(r["disagreements"], 0);
}

#[test]
fn census_refuses_huge_ranges() {
    let out = nilgraph(&["census", "--family", "cycle", "--max-n", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("about"));
    let out = nilgraph(&["census", "--family", "tetrahedra", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pretty_output_is_text() {
    let out = nilgraph(&["--pretty", "info", &fixture("four_cycle.graph")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("v1 + v3"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}
