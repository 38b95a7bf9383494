use std::path::Path;
use std::process::{Command, Output};

use graphlets::generate::erdos_renyi;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphlets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exact_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run(&["exact", &k4]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counts"]["4-clique"], 1);
    assert_eq!(v["counts"]["triangle"], 4);
    assert_eq!(v["counts"]["4-path"], 0);
    assert!(v.get("timing").is_none());
}

#[test]
fn verify_passes_on_random_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = erdos_renyi(30, 0.2, 9);
    let path = write(dir.path(), "g.txt", &g.to_canonical_string());
    let out = run(&["--format", "canonical", "verify", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn estimate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = erdos_renyi(50, 0.15, 4);
    let path = write(dir.path(), "g.txt", &g.to_canonical_string());
    let args = ["--format", "canonical", "estimate", &path, "--prob", "0.3", "--seed", "17"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 1\nx\n");
    let empty = write(dir.path(), "empty.txt", "# nothing\n");
    let big = write(dir.path(), "big.txt", &erdos_renyi(60, 0.1, 1).to_canonical_string());

    assert_eq!(run(&["exact", &bad]).status.code(), Some(2));
    assert_eq!(run(&["exact", &empty]).status.code(), Some(2));
    assert_eq!(run(&["exact", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "canonical", "oracle", &big, "--cap", "20"]).status.code(), Some(3));
    assert_eq!(run(&["--format", "canonical", "estimate", &big, "--prob", "2"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
