mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::t1;
use sstrpvst::io::save_instance;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sstrpvst"))
        .args(args)
        .env("SSTRPVST_THREADS", "1")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn oracle_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("t1.json");
    let sol = dir.path().join("opt.json");
    save_instance(&t1(), &inst).unwrap();
    let out = cli(&["oracle", s(&inst), "--out", s(&sol)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = cli(&["evaluate", s(&inst), s(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("objective 1.000000"));
}

#[test]
fn solve_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let gen = cli(&[
        "generate",
        "--profile",
        "tiny",
        "--nodes",
        "7",
        "--count",
        "1",
        "--seed",
        "5",
        "--out",
        s(dir.path()),
    ]);
    assert!(gen.status.success());
    let inst = dir.path().join("tiny-5.json");
    let sol = dir.path().join("sol.json");
    let out = cli(&[
        "solve",
        s(&inst),
        "--seed",
        "1",
        "--iters",
        "50",
        "--ls",
        "hybrid",
        "--phase3",
        "--out",
        s(&sol),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("sol.trace.csv").exists());
    assert!(dir.path().join("sol.result.csv").exists());
    assert_eq!(cli(&["evaluate", s(&inst), s(&sol)]).status.code(), Some(0));

    // no iterations: the construction comes back
    let zero = dir.path().join("zero.json");
    let out = cli(&["solve", s(&inst), "--iters", "0", "--out", s(&zero)]);
    assert!(out.status.code() == Some(0) || out.status.code() == Some(1));
    let trace = std::fs::read_to_string(dir.path().join("zero.trace.csv")).unwrap();
    assert!(trace.lines().count() <= 1);
}

#[test]
fn bench_writes_one_row_per_method() {
    let dir = tempfile::tempdir().unwrap();
    let out_csv = dir.path().join("bench.csv");
    let out = cli(&[
        "bench",
        "--profiles",
        "tiny",
        "--replicates",
        "1",
        "--seeds",
        "0",
        "--iters",
        "20",
        "--phase3-secs",
        "5",
        "--out",
        s(&out_csv),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&out_csv).unwrap();
    let methods: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("tiny-0,"))
        .collect();
    assert_eq!(methods.len(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = cli(&["bounds", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json:1:"));

    let gen = cli(&[
        "generate",
        "--profile",
        "small",
        "--seed",
        "1",
        "--out",
        s(dir.path()),
    ]);
    assert!(gen.status.success());
    let big = dir.path().join("small-1.json");
    assert_eq!(cli(&["oracle", s(&big)]).status.code(), Some(3));
    assert!(cli(&["bounds", s(&big)]).status.success());
}
