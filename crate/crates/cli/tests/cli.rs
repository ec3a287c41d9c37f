use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use semihomology::chainkit::homology;
use semihomology::diagmod::json::{module_from_json, module_to_json};
use semihomology::diagmod::DiagramModule;
use semihomology::simplexcat::Kind;
use semihomology::transport::underlying_complex;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_semihomology"));
    c.env_remove("SEMIHOMOLOGY_MAX_TRUNC");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_module(dir: &Path, name: &str, x: &DiagramModule) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, module_to_json(x)).unwrap();
    p
}

#[test]
fn counterexample_reports_zero_then_one() {
    let o = run(&["counterexample", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = r["checks"].as_array().unwrap();
    let dim = |name: &str| {
        checks.iter().find(|c| c["check"] == name).unwrap()["witness"]["dim"].as_u64().unwrap()
    };
    assert_eq!(dim("counterexample.source_h_minus1"), 0);
    assert_eq!(dim("counterexample.target_h_minus1"), 1);
    let unit = checks.iter().find(|c| c["check"] == "counterexample.unit").unwrap();
    assert_eq!(unit["verdict"], "expected_fail");
    assert_eq!(r["summary"]["success"], true);
}

#[test]
fn validate_flags_a_broken_relation() {
    let dir = tempfile::tempdir().unwrap();
    let x = DiagramModule::representable(Kind::Ssimp, 2, 2).unwrap();
    let good = write_module(dir.path(), "good.json", &x);
    let o = run(&["validate", "--in", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid module"));

    let mut v: Value = serde_json::from_str(&module_to_json(&x)).unwrap();
    v["actions"]["delta 0 2"][0][0] = Value::from("5");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["validate", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("relation"), "{}", stdout(&o));
    // other commands refuse the same file as input
    let o = run(&["homology", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_is_an_input_error_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"kind\": \"ssimp\",\n  \"truncation\": \n}").unwrap();
    let o = run(&["homology", "--in", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let o = run(&["convert", "--in", p.to_str().unwrap(), "--to", "json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_table_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let x = DiagramModule::representable(Kind::Scube, 2, 4).unwrap();
    let p = write_module(dir.path(), "x.json", &x);
    let o = run(&["homology", "--in", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let h = homology(&underlying_complex(&x).unwrap()).unwrap();
    assert_eq!(got, serde_json::to_value(h.summary()).unwrap());
    let table = stdout(&run(&["homology", "--in", p.to_str().unwrap()]));
    assert!(table.starts_with("window [0, 3]"));
}

#[test]
fn module_json_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let x = DiagramModule::representable(Kind::AugSsimp, 1, 3).unwrap();
    let p = write_module(dir.path(), "x.json", &x);
    let o = run(&["convert", "--in", p.to_str().unwrap(), "--to", "json"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&p).unwrap());
    let o = run(&["convert", "--in", p.to_str().unwrap(), "--to", "text"]);
    assert!(stdout(&o).starts_with("kind aug_ssimp truncation 3"));
}

#[test]
fn battery_is_deterministic_and_succeeds() {
    let args = ["battery", "--counts", "3", "3", "2", "--trunc", "4", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.json");
    std::fs::write(&p, &a.stdout).unwrap();
    let t = run(&["convert", "--in", p.to_str().unwrap(), "--to", "table"]);
    assert!(stdout(&t).contains("=> OK"));
}

#[test]
fn truncation_cap_is_enforced() {
    let o = run(&["battery", "--trunc", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["counterexample", "--trunc", "5"]).env("SEMIHOMOLOGY_MAX_TRUNC", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SEMIHOMOLOGY_MAX_TRUNC"));
}

#[test]
fn induction_needs_a_free_top_degree() {
    let dir = tempfile::tempdir().unwrap();
    let full = DiagramModule::representable(Kind::AugSsimp, 3, 3).unwrap();
    let p = write_module(dir.path(), "full.json", &full);
    let o = run(&["induce", "--in", p.to_str().unwrap(), "--functor", "v", "--window-strict"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window"));

    let point = DiagramModule::representable(Kind::AugSsimp, 0, 3).unwrap();
    let p = write_module(dir.path(), "point.json", &point);
    let o = run(&["induce", "--in", p.to_str().unwrap(), "--functor", "v", "--window-strict"]);
    assert_eq!(o.status.code(), Some(0));
    let induced = module_from_json(&stdout(&o)).unwrap();
    assert_eq!(induced.dims(), &[2, 1, 0, 0, 0]);
}

#[test]
fn unit_maps_feed_the_weak_equivalence_check() {
    let dir = tempfile::tempdir().unwrap();
    let point = DiagramModule::representable(Kind::AugSsimp, 0, 3).unwrap();
    let p = write_module(dir.path(), "point.json", &point);
    let o = run(&["unit", "--in", p.to_str().unwrap(), "--functor", "v"]);
    assert_eq!(o.status.code(), Some(0));
    let unit = dir.path().join("unit.json");
    std::fs::write(&unit, &o.stdout).unwrap();
    let o = run(&["weq", "--in", unit.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["agree"], true);
    assert_eq!(v["failures"], serde_json::json!([[-1, 0, 1, 0]]));
    let o = run(&["fib", "--in", unit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn restriction_and_augmentation() {
    let dir = tempfile::tempdir().unwrap();
    let cube = DiagramModule::representable(Kind::Scube, 1, 3).unwrap();
    let p = write_module(dir.path(), "cube.json", &cube);
    let o = run(&["restrict", "--in", p.to_str().unwrap(), "--functor", "v"]);
    let v = module_from_json(&stdout(&o)).unwrap();
    assert_eq!((v.kind(), v.dims()), (Kind::AugSsimp, &[2usize, 1, 0, 0][..]));
    let q = dir.path().join("v.json");
    std::fs::write(&q, &o.stdout).unwrap();
    let o = run(&["augment", "--in", q.to_str().unwrap()]);
    let c = module_from_json(&stdout(&o)).unwrap();
    assert_eq!(c.kind(), Kind::ChainNeg1);
    let r = dir.path().join("c.json");
    std::fs::write(&r, &o.stdout).unwrap();
    let o = run(&["truncate", "--in", r.to_str().unwrap(), "--good"]);
    let tau = module_from_json(&stdout(&o)).unwrap();
    assert_eq!(tau.kind(), Kind::Chain0);
}

#[test]
fn corpus_writes_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = run(&["corpus", "--counts", "2", "1", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let index: Value = serde_json::from_str(&std::fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
    let entries = index["entries"].as_array().unwrap();
    assert!(entries.len() > 4);
    for e in entries {
        let f = out.join(e["file"].as_str().unwrap());
        let o = run(&["validate", "--in", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", f.display());
    }
}
