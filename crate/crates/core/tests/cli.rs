// End-to-end runs of the diffchar binary against the bundled fixture files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// (exit code, parsed stdout or stderr)
fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_diffchar")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = if out.stdout.is_empty() { out.stderr } else { out.stdout };
    let v = serde_json::from_slice(&text).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&text)));
    (code, v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{args:?}: {v}");
    v["result"].clone()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn homology_of_fixtures() {
    let t2 = ok(&["homology", "--complex", "T2_9", "--degree", "1"]);
    assert_eq!(t2["betti"], 2);
    let rp2 = ok(&["homology", "--complex", path(&fixture("rp2.json")), "--degree", "1"]);
    assert_eq!(rp2["betti"], 0);
    assert_eq!(rp2["torsion"], serde_json::json!(["2"]));
}

#[test]
fn evaluations() {
    let v = ok(&["eval", "--complex", "S1_3", "--character", "i", "--chain", path(&fixture("v1_minus_v0.json"))]);
    assert_eq!(v["value"], "1/3");
    for g in ["gamma1.json", "gamma2.json"] {
        let v = ok(&["eval", "--complex", "T2_9", "--character", path(&fixture("ixi.json")), "--chain", path(&fixture(g))]);
        assert_eq!(v["value"], "0");
    }
    let v = ok(&["eval", "--complex", "RP2_6", "--character", "ju", "--chain", path(&fixture("rp2_torsion_cycle.json"))]);
    assert_eq!(v["value"], "1/2");
}

#[test]
fn reports_are_deterministic() {
    let g1 = fixture("gamma1.json");
    let args = ["eval", "--complex", "T2_9", "--character", "ixi", "--chain", path(&g1)];
    let (a, b) = (run(&args).1, run(&args).1);
    assert_eq!(a, b);
    assert_eq!(a["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn sections_and_obstructions() {
    let dir = tempfile::tempdir().unwrap();
    let eta = dir.path().join("eta.json");
    std::fs::write(&eta, r#"{"degree":1,"values":{"[0,1]":"1/2","[0,2]":"1/3"}}"#).unwrap();
    let h = ok(&["iota", "--complex", "S2_4'", "--cochain", path(&eta)]);
    let hfile = dir.path().join("h.json");
    std::fs::write(&hfile, h.to_string()).unwrap();
    let sec = ok(&["find-section", "--complex", "S2_4'", "--character", path(&hfile), "--map", path(&fixture("equator_map.json"))]);
    assert_eq!(sec["section"]["degree"], 2);

    // the torsion class of RP2_6 obstructs a section along the identity
    let id = dir.path().join("id.json");
    std::fs::write(&id, r#"{"vertex_map":[0,1,2,3,4,5],"source":"RP2_6","target":"RP2_6"}"#).unwrap();
    let (code, v) = run(&["find-section", "--complex", "RP2_6", "--character", "ju", "--map", path(&id)]);
    assert_eq!(code, 1, "{v}");
    assert!(v["result"]["section"].is_null());
    assert!(v["result"]["obstruction"].is_string());
}

#[test]
fn holonomy_along_gamma1() {
    let v = ok(&["holonomy", "--complex", "T2_9", "--character", "ixi", "--map", path(&fixture("gamma1_map.json"))]);
    assert_eq!(v["holonomy"], "0");
}

#[test]
fn fiber_integration_recovers_i() {
    let v = ok(&["fiber-integrate", "--complex", "S1_3", "--fiber", "S1_3", "--character", "ixi"]);
    let i: Value = serde_json::from_str(&std::fs::read_to_string(fixture("i.json")).unwrap()).unwrap();
    assert_eq!(v, i);
}

#[test]
fn verify_and_errors() {
    let v = ok(&["verify", "--suite", "holonomy", "--samples", "2"]);
    assert_eq!(v["passed"], true);
    let (code, v) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("bogus"));
    let (code, _) = run(&["eval", "--complex", "S1_3", "--character", "i", "--chain", path(&fixture("s1_3_fundamental.json"))]);
    assert_eq!(code, 2);
    let (code, _) = run(&["eval", "--complex", "S2_4'", "--character", "ixi", "--chain", path(&fixture("gamma1.json"))]);
    assert_eq!(code, 2);
}
