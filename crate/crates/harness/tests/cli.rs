use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use csplab_core::format::parse_instance;
use csplab_core::value::max_value;

fn csplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csplab"))
        .args(args)
        .env_remove("CSPLAB_BRUTE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_then_solve_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let spec = repo_file("configs/gen-random-graph.json");
    let inst = dir.path().join("g.maxcsp");
    let o = csplab(&["gen", spec.to_str().unwrap(), "--out", inst.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&inst).unwrap();
    let (want, arg) = max_value(&parse_instance(&text).unwrap()).unwrap();

    let o = csplab(&["solve", inst.to_str().unwrap(), "--exact", "--witness"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{want}\n{arg}\n"));
}

#[test]
fn gen_seed_flag_changes_output_deterministically() {
    let spec = repo_file("configs/gen-random-graph.json");
    let spec = spec.to_str().unwrap();
    let a = stdout(&csplab(&["gen", spec, "--seed", "5"]));
    let b = stdout(&csplab(&["gen", spec, "--seed", "5"]));
    let c = stdout(&csplab(&["gen", spec, "--seed", "6"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn triangle_fixture() {
    let tri = repo_file("fixtures/triangle.maxcsp");
    let o = csplab(&["solve", tri.to_str().unwrap(), "--exact"]);
    assert_eq!(stdout(&o), "2/3\n");
    let o = csplab(&["run", tri.to_str().unwrap(), "--algo", "trivial", "--eps", "0.01"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.49\n");
    let dtri = repo_file("fixtures/directed-triangle.maxcsp");
    let o = csplab(&["solve", dtri.to_str().unwrap(), "--exact"]);
    assert_eq!(stdout(&o), "1/3\n");
}

#[test]
fn component_growing_flags_triangle() {
    let tri = repo_file("fixtures/triangle.maxcsp");
    let o = csplab(&[
        "run",
        tri.to_str().unwrap(),
        "--algo",
        "component-growing",
        "--space-bits",
        "1024",
        "--verify-roundtrip",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).to_lowercase().contains("odd"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_one() {
    let o = csplab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let tri = repo_file("fixtures/triangle.maxcsp");
    let o = csplab(&["solve", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = csplab(&["solve", "/nonexistent/file.maxcsp", "--exact"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("csplab: error:") && err.trim_end().lines().count() == 1);
}

#[test]
fn capacity_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "big.json", r#"{"kind":"random-graph","n":30,"m":60,"seed":1}"#);
    let inst = dir.path().join("big.maxcsp");
    assert!(csplab(&["gen", &spec, "--out", inst.to_str().unwrap()]).status.success());
    let o = csplab(&["solve", inst.to_str().unwrap(), "--exact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sweep.json",
        r#"{
  "algo": {"algo": "component-growing"},
  "yes": {"kind": "matching-chunks", "n": 100, "T": 4, "alpha": 0.375, "mode": "yes", "eta": 0.0, "seed": 0},
  "no": {"kind": "matching-chunks", "n": 100, "T": 4, "alpha": 0.375, "mode": "no", "eta": 0.0, "seed": 0},
  "ordering": "adversarial",
  "seed": 9,
  "space_grid": [64, 1024],
  "pass_grid": [1],
  "trials": 100
}"#,
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = csplab(&["sweep", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 3);
}

#[test]
fn algos_lists_registry() {
    let text = stdout(&csplab(&["algos"]));
    for id in ["trivial", "sparsify", "bias-greedy", "component-growing", "random-walk"] {
        assert!(text.contains(id), "{id} missing");
    }
}
