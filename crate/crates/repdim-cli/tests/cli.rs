use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repdim")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn tensor_of_kronecker_squares() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kk.json");
    let dot = dir.path().join("kk.dot");
    let o = run(&["algebra", "tensor", &fixture("kron.json"), &fixture("kron.json"), "-o", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let r = &json(&o)["result"];
    assert_eq!((r["vertices"].as_u64(), r["arrows"].as_u64(), r["relations"].as_u64()), (Some(4), Some(8), Some(4)));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let t = run(&["algebra", "tiers", out.to_str().unwrap()]);
    let c = json(&t);
    assert_eq!(c["pass"], true);
    assert_eq!(c["result"]["num_tiers"], 3);
}

#[test]
fn malformed_and_non_admissible_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field":"Q","vertices":["o"],"arrows":[{"name":"x","source":"o","target":"o"}],"relations":[]}"#).unwrap();
    let o = run(&["algebra", "check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"], "not_admissible");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(run(&["algebra", "check", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"field":"Q","vertices":["o"],"arrows":[],"relations":[],"extra":1}"#).unwrap();
    assert_eq!(run(&["algebra", "check", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["algebra", "tiers", &fixture("local.json")]).status.code(), Some(3));
}

#[test]
fn bounded_inventory_with_require_complete() {
    let f = fixture("kronA2.json");
    let o = run(&["tors", "enumerate", &f, "--strategy", "bounded", "--bound", "3"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["result"]["status"], "bounded(3)");
    let o = run(&["tors", "enumerate", &f, "--strategy", "bounded", "--bound", "3", "--require-complete"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn inventories_and_gamma() {
    let o = run(&["tors", "enumerate", &fixture("a3r2.json")]);
    let r = &json(&o)["result"];
    assert_eq!(r["torsionless"].as_array().unwrap().len(), 4);
    assert_eq!(r["divisible"].as_array().unwrap().len(), 4);
    assert_eq!(json(&run(&["tors", "gamma", &fixture("square.json")]))["pass"], true);
    assert_eq!(json(&run(&["tors", "verify", &fixture("local.json"), "--samples", "40"]))["pass"], true);
}

#[test]
fn certify_routes() {
    let c = json(&run(&["repdim", "certify", &fixture("a3r2.json")]));
    assert_eq!(c["result"]["gldim"]["gldim"], serde_json::json!({"kind": "exact", "value": 2}));
    assert!(c["result"]["bounds"]["upper"].as_u64().unwrap() <= 3);
    let c = json(&run(&["repdim", "certify", &fixture("kk.json"), "--tiered", "--field", "F2"]));
    assert_eq!((c["result"]["bounds"]["lower"].as_u64(), c["result"]["bounds"]["upper"].as_u64()), (Some(4), Some(4)));
    let o = run(&["repdim", "certify", &fixture("ex84mid.json"), "--tiered"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(json(&o)["witness"].as_str().unwrap().starts_with("(P(a), P(a'))"));
    let g = json(&run(&["repdim", "gldim", "--objects", "projectives-only", &fixture("kron.json")]));
    assert_eq!(g["result"]["certificate"]["gldim"], serde_json::json!({"kind": "exact", "value": 1}));
}

#[test]
fn odim_and_tiered_commands() {
    let c = json(&run(&["odim", "test", &fixture("kron-family.json"), "--field", "F5"]));
    assert_eq!((c["result"]["passed"].as_u64(), c["result"]["witness_for"].as_u64()), (Some(5), Some(1)));
    let f = fixture("kron-family.json");
    let c = json(&run(&["odim", "kunneth", &f, &f, "--field", "F2"]));
    assert_eq!((c["result"]["passed"].as_u64(), c["result"]["total"].as_u64()), (Some(4), Some(4)));
    assert!(c["result"]["rows"].as_array().unwrap().iter().all(|r| r["degree"] == 2));
    let c = json(&run(&["tiered", "p1p2", &fixture("ex84mid.json")]));
    assert_eq!((c["result"]["p1"]["pass"].as_bool(), c["result"]["p2"]["pass"].as_bool()), (Some(true), Some(false)));
    assert!(c["witness"].as_str().unwrap().contains("(P(a), P(a'))"));
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("theta.dot");
    let c = json(&run(&["tiered", "coeff", &fixture("kk.json"), "--vertex", "s|s", "--dot", dot.to_str().unwrap()]));
    assert_eq!(c["result"]["nodes"].as_array().unwrap().len(), 9);
    assert!(std::fs::read_to_string(dot).unwrap().contains("shape=box"));
}

#[test]
fn biserial_and_reduction() {
    let sq = fixture("square.json");
    let c = json(&run(&["biserial", "check", &sq, &fixture("square-pa.json")]));
    assert_eq!(c["pass"], false);
    assert!(c["witness"].as_str().unwrap().contains("bd and cd"));
    assert_eq!(json(&run(&["biserial", "check", &sq, &fixture("square-split.json")]))["pass"], true);
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let o = run(&["reduce", "projinj", &fixture("a3r2.json"), "-o", q.to_str().unwrap()]);
    assert!(o.status.success());
    let check = run(&["algebra", "check", q.to_str().unwrap()]);
    assert!(check.status.success());
}

#[test]
fn certificates_are_byte_identical() {
    for args in [
        vec!["repdim", "certify", "a3r2.json"],
        vec!["tors", "verify", "square.json"],
        vec!["tiered", "layering", "kk.json"],
        vec!["odim", "test", "kron-family.json"],
    ] {
        let f = fixture(args[2]);
        let full = [args[0], args[1], f.as_str(), "--seed", "3"];
        assert_eq!(run(&full).stdout, run(&full).stdout, "{args:?}");
    }
}

#[test]
fn fixtures_round_trip() {
    let o = json(&run(&["fixture", "list"]));
    for name in o["result"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        let dumped = run(&["fixture", "dump", name, "--field", "F2"]);
        assert!(dumped.status.success(), "{name}");
        let file = std::fs::read(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(serde_json::from_slice::<Value>(&dumped.stdout).unwrap(), serde_json::from_slice::<Value>(&file).unwrap(), "{name}");
    }
}
