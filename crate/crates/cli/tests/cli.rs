use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use spectrum_core::corners::ConvexCorner;
use spectrum_core::graph::{from_graph6, from_json, strong_product, Graph};

fn spectrum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectrum"))
        .args(args)
        .env_remove("SPECTRUM_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = spectrum(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn theta_of_the_pentagon() {
    let r = json(&["param", "--graph", "g6:DUW", "--param", "theta"]);
    let v = r["result"]["value"]["value"]["approx"].as_f64().unwrap();
    assert!((v - 5f64.sqrt()).abs() < 1e-6, "{v}");
    assert_eq!(r["result"]["value"]["provenance"]["kind"], "computed");
    assert_eq!(r["seed"], 0x5EED);
    assert!(r["tolerances"]["theta_relative"].is_number());
}

#[test]
fn named_graphs_use_bundled_values() {
    let r = json(&["param", "--graph", "C5", "--param", "haemersF2"]);
    assert_eq!(r["result"]["value"]["value"]["text"], "5/2");
    assert_eq!(r["result"]["value"]["provenance"]["kind"], "fixture");
}

#[test]
fn single_vertex_and_empty_graph() {
    let one = json(&["param", "--graph", "g6:@", "--param", "alpha"]);
    assert_eq!(one["result"]["value"]["value"]["text"], "1");
    let empty = json(&["param", "--graph", "g6:?", "--param", "alpha"]);
    assert_eq!(empty["result"]["value"]["value"]["text"], "0");
}

#[test]
fn repro_example_prints_exact_values() {
    let out = spectrum(&["repro-example"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["2600/11", "15625/64", "625*sqrt(5)/8"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(spectrum(&["param", "--bogus"]).status.code(), Some(2));
    assert_eq!(spectrum(&["param", "--graph", "no-such-graph", "--param", "alpha"]).status.code(), Some(2));
    assert_eq!(spectrum(&["param", "--graph", "C5", "--param", "lambda"]).status.code(), Some(2));
    // the bound is only bundled, never computed
    assert_eq!(spectrum(&["param", "--graph", "g6:DUW", "--param", "haemersF2"]).status.code(), Some(1));
    assert_eq!(spectrum(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["refine", "--graph", "C5", "--param", "theta", "--param", "chibar_f", "--lambda", "0.5"];
    assert_eq!(spectrum(&args).stdout, spectrum(&args).stdout);
    let args = ["refine", "--graph", "g6:Bw", "--param", "chibar_f", "--k-max", "2"];
    assert_eq!(spectrum(&args).stdout, spectrum(&args).stdout);
}

#[test]
fn emitted_graphs_round_trip() {
    let r = json(&["product", "--graph", "C5", "--with", "g6:Bg", "--op", "strong"]);
    let expected = strong_product(&Graph::cycle(5), &Graph::path(3));
    let g6 = r["result"]["graph6"].as_str().unwrap();
    assert_eq!(from_graph6(g6).unwrap().edge_count(), expected.edge_count());
    let g = from_json(&r["result"]["graph"].to_string()).unwrap();
    assert_eq!(g, expected);

    // and feed the file back in
    let path = scratch("product.json");
    std::fs::write(&path, r["result"]["graph"].to_string()).unwrap();
    let back = json(&["param", "--graph", path.to_str().unwrap(), "--param", "alpha"]);
    assert_eq!(back["result"]["value"]["value"]["text"], "4");
}

#[test]
fn emitted_corners_round_trip() {
    let path = scratch("corner.json");
    let out = spectrum(&["corner", "--graph", "P4", "--op", "antiblocker", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let corner = report["result"]["output"].to_string();
    let c = ConvexCorner::from_json(&corner).unwrap();
    assert_eq!(c.to_json().unwrap(), ConvexCorner::from_json(&c.to_json().unwrap()).unwrap().to_json().unwrap());

    let file = scratch("corner-only.json");
    std::fs::write(&file, &corner).unwrap();
    let again = json(&["corner", "--corner", file.to_str().unwrap(), "--op", "antiblocker"]);
    let exported = json(&["corner", "--graph", "P4", "--op", "export"]);
    // the double antiblocker has the same generators, possibly reordered
    let generators = |v: &Value| {
        let mut g: Vec<String> = v["result"]["output"]["generators"].as_array().unwrap().iter().map(Value::to_string).collect();
        g.sort();
        g
    };
    assert_eq!(generators(&again), generators(&exported));
    assert_eq!(again["result"]["output"]["ground"], exported["result"]["output"]["ground"]);
}

#[test]
fn corner_entropy_matches_refinement() {
    let e = json(&["corner", "--graph", "C5", "--param", "theta", "--op", "entropy"]);
    let bits = e["result"]["output"]["bits"]["value"].as_f64().unwrap();
    assert!((bits - 5f64.log2() / 2.0).abs() < 1e-6, "{bits}");
    let r = json(&["refine", "--graph", "C5", "--param", "theta"]);
    let corner = r["result"]["corner"]["bits"]["value"].as_f64().unwrap();
    assert!((bits - corner).abs() < 1e-9);
}

#[test]
fn distributions_from_json() {
    let dist = r#"{"labels":[0,1,2],"weights":["1/2","1/2","0"]}"#;
    let r = json(&["refine", "--graph", "C5", "--param", "chibar_f", "--dist", dist, "--k-max", "2"]);
    assert_eq!(r["result"]["distribution"][0], 0.5);
    assert_eq!(r["result"]["distribution"][4], 0.0);
    assert_eq!(r["result"]["fekete_below_corner"], true);
    let bad = r#"{"labels":[0,9],"weights":["1/2","1/2"]}"#;
    assert_eq!(spectrum(&["refine", "--graph", "C5", "--param", "alpha", "--dist", bad]).status.code(), Some(2));
}

#[test]
fn csv_and_text() {
    let csv = spectrum(&["param", "--graph", "K3,3", "--param", "chibar_f", "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    assert!(csv.starts_with("field,value\n"));
    assert!(csv.contains("result.value.value.text,3\n"), "{csv}");
    assert!(csv.contains("\"param --graph K3,3 --param chibar_f --format csv\""));

    let text = spectrum(&["param", "--graph", "K3,3", "--param", "chibar_f", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("result.param") && l.ends_with("chibar_f")));
}

#[test]
fn verify_example_suite() {
    let r = json(&["verify", "--suite", "example", "--seed", "3"]);
    assert_eq!(r["result"]["ok"], true);
    assert_eq!(r["result"]["checks"].as_array().unwrap().len(), 3);
    assert_eq!(r["seed"], 3);
}

#[test]
fn cap_is_enforced() {
    let args = ["refine", "--graph", "C5", "--param", "chibar_f", "--k-max", "3", "--cap", "10"];
    let out = spectrum(&args);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!out.stderr.is_empty());
}
