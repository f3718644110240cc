use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hfsurg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfsurg")).args(args).output().unwrap()
}

fn golden(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(rel)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_table_for_trefoil() {
    let m = golden("models/trefoil.json");
    let o = hfsurg(&["compute", "--input", m.to_str().unwrap(), "--slope", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("slope 1/1, |H1| = 1"));
}

#[test]
fn compute_single_spinc_doc() {
    let m = golden("models/k0.json");
    let o = hfsurg(&["compute", "--input", m.to_str().unwrap(), "--slope", "-4", "--spinc", "1", "--format", "doc"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "surgeries");
    assert_eq!(v["results"][0]["structures"].as_array().unwrap().len(), 1);
}

#[test]
fn out_of_range_spinc_fails() {
    let m = golden("models/k0.json");
    let o = hfsurg(&["compute", "--input", m.to_str().unwrap(), "--slope", "-4", "--spinc", "9"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn missing_input_is_reported() {
    let o = hfsurg(&["compute", "--input", "/nonexistent/k.json", "--slope", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trials_conflict_with_input() {
    let m = golden("models/k0.json");
    let o = hfsurg(&["oracle", "--input", m.to_str().unwrap(), "--trials", "2"]);
    assert!(!o.status.success());
}

#[test]
fn oracle_single_model_agrees() {
    let m = golden("models/trefoil.json");
    let o = hfsurg(&["oracle", "--input", m.to_str().unwrap(), "--slope", "-2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert!(s.lines().all(|l| l.ends_with("agree")), "{s}");
}

#[test]
fn oracle_trials_run() {
    let o = hfsurg(&["oracle", "--trials", "5", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("mismatched 0"));
}

#[test]
fn obstruct_and_enumerate_teragaito() {
    let y = golden("manifolds/teragaito.json");
    let o = hfsurg(&["obstruct", "--input", y.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c(Y) = 5/2"));
    let o = hfsurg(&["enumerate", "--input", y.to_str().unwrap(), "--format", "doc"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "enumeration");
}

#[test]
fn recover_from_written_manifold() {
    let m = golden("models/t52.json");
    let dir = tempfile::tempdir().unwrap();
    let y = dir.path().join("y.json");
    let o = hfsurg(&["compute", "--input", m.to_str().unwrap(), "--slope", "-1/2", "--format", "doc", "--out", y.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&y).unwrap()).unwrap();
    let one = serde_json::json!({"schema": 1, "kind": "manifold"});
    let mut one = one.as_object().unwrap().clone();
    for (k, v) in doc["results"][0].as_object().unwrap() {
        one.insert(k.clone(), v.clone());
    }
    std::fs::write(&y, serde_json::to_string(&one).unwrap()).unwrap();
    let o = hfsurg(&["recover", "--input", y.to_str().unwrap(), "--slope", "-1/2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("Δ ="));
}
