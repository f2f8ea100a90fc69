use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn subadd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subadd"))
        .args(args)
        .env_remove("SUBADD_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_adloc_passes() {
    let out = subadd(&["verify", "adloc", "--p", "2", "--r", "2", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = json(&out);
    assert_eq!(rep["passed"], Value::Bool(true));
    let assertions = rep["runs"][0]["assertions"].as_array().unwrap();
    let names: Vec<&str> = assertions.iter().map(|a| a["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn verify_bcr_reports_triggers() {
    let out = subadd(&["verify", "bcr", "--window", "-6,8", "--rgap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert!(rep["runs"][0]["data"]["triggered"].as_u64().unwrap() > 0);
    assert_eq!(rep["runs"][0]["data"]["window"], serde_json::json!([-6, 8]));
}

#[test]
fn invalid_configs_exit_2() {
    assert_eq!(subadd(&["verify", "adloc", "--r", "0"]).status.code(), Some(2));
    assert_eq!(subadd(&["verify", "adloc", "--window", "1,4"]).status.code(), Some(2));
    assert_eq!(subadd(&["verify", "nonsense"]).status.code(), Some(2));
    let path = scratch("bad.cfg");
    fs::write(&path, "p = 2\nr = 0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_subadd"))
        .args(["verify", "sums"])
        .env("SUBADD_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    fs::write(&path, "p = 2\nflavour = 1\n").unwrap();
    let out = subadd(&["--config", path.to_str().unwrap(), "verify", "sums"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_overrides() {
    let path = scratch("good.cfg");
    fs::write(&path, "r = 3\nextension_degrees = 1\ncorpus_size = 20\n").unwrap();
    let out = subadd(&["--config", path.to_str().unwrap(), "--r", "2", "verify", "pointmodule"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["config"]["r"], 2);
    assert_eq!(rep["config"]["corpus_size"], 20);
}

fn class_counts(rep: &Value) -> Vec<u64> {
    rep["runs"].as_array().unwrap().iter().map(|r| r["data"]["join_irreducible_classes"].as_u64().unwrap()).collect()
}

#[test]
fn reconstruct_class_counts() {
    let out = subadd(&["reconstruct", "--ext", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(class_counts(&json(&out)), vec![3, 5]);
    let out = subadd(&["reconstruct", "--r", "3", "--ext", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(class_counts(&json(&out)), vec![7]);
    let out = subadd(&["reconstruct", "--p", "3", "--ext", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(class_counts(&rep), vec![4]);
    assert!(rep["runs"][0]["poset"]["covers"].is_array());
}

#[test]
fn dump_corpus_is_byte_stable() {
    let (a, b) = (scratch("corpus_a.json"), scratch("corpus_b.json"));
    for path in [&a, &b] {
        let out = subadd(&["dump", "corpus", "--seed", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    let other = subadd(&["dump", "corpus", "--seed", "6"]);
    assert_ne!(other.stdout, x);
}

#[test]
fn dump_module_and_pipoint() {
    let m = json(&subadd(&["dump", "module", "k"]));
    assert_eq!(m["dim"], 1);
    for a in m["actions"].as_array().unwrap() {
        assert_eq!(a["entries"], serde_json::json!([[0]]));
    }
    assert_eq!(json(&subadd(&["dump", "module", "omega:2"]))["dim"], 5);
    assert_eq!(subadd(&["dump", "module", "widget"]).status.code(), Some(2));
    let pt = json(&subadd(&["dump", "pipoint", "--lambda", "1,0"]));
    assert_eq!(pt["normalized"], serde_json::json!([1, 0]));
    assert_eq!(subadd(&["dump", "pipoint", "--lambda", "0,0"]).status.code(), Some(2));
    assert_eq!(subadd(&["dump", "pipoint", "--lambda", "1,2"]).status.code(), Some(2));
}

fn without_timing(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn reports_are_deterministic() {
    let a = subadd(&["verify", "sums", "--seed", "3"]);
    let b = subadd(&["verify", "sums", "--seed", "3"]);
    assert_eq!(without_timing(&a), without_timing(&b));
    let c = subadd(&["verify", "sums", "--seed", "4"]);
    assert_ne!(without_timing(&a)["report_fingerprint"], without_timing(&c)["report_fingerprint"]);
}

#[test]
fn tsv_output() {
    let out = subadd(&["verify", "pipoint", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("run\tcorpus_fingerprint\tassertion\tpass\tcounterexample"));
    assert!(text.lines().any(|l| l.contains("pipoint.adloc_equals_thick\ttrue")));
}
