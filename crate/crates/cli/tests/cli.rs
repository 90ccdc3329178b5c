use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const SAMPLE: &str = "source: 2 4        # factor orders of G; 0 = Z
target: 2 4        # factor orders of H
matrix:            # m rows, n columns; column j = image of generator j
0 1
2 0
rhs: 1 2
";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelsolve")).args(args).output().expect("spawn abelsolve")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_sample_with_each_strategy() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    for st in ["auto", "snf", "snf-hybrid", "block", "hensel", "oracle"] {
        let out = run(&["solve", f.to_str().unwrap(), "--strategy", st]);
        assert_eq!(out.status.code(), Some(0), "{st}");
        let text = stdout(&out);
        assert!(text.starts_with("SOLVABLE"), "{st}: {text}");
        assert!(text.contains("kernel: (0, 2)"), "{st}: {text}");
    }
}

#[test]
fn inconsistent_exits_ten() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", &SAMPLE.replace("rhs: 1 2", "rhs: 1 1"));
    for st in ["auto", "hensel", "oracle"] {
        let out = run(&["solve", f.to_str().unwrap(), "--strategy", st]);
        assert_eq!(out.status.code(), Some(10));
        assert_eq!(stdout(&out).trim(), "INCONSISTENT");
    }
}

#[test]
fn modular_on_mixed_exponents_exits_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = run(&["solve", f.to_str().unwrap(), "--strategy", "modular"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn modular_on_homocyclic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "h.txt", "source: 9 9\ntarget: 9 9\nmatrix:\n2 1\n1 2\nrhs: 3 0\n");
    let out = run(&["solve", f.to_str().unwrap(), "--strategy", "modular"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = run(&["solve", f.to_str().unwrap(), "--strategy", "hensel", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "solvable");
    assert_eq!(v["strategy"], "hensel");
    assert_eq!(v["particular"].as_array().unwrap().len(), 2);
    assert_eq!(v["kernel"], serde_json::json!([[0, 2]]));
}

#[test]
fn big_numbers_survive_json() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "z.txt", "source: 0\ntarget: 0\nmatrix:\n1\nrhs: 123456789012345678901234567890\n");
    let out = run(&["solve", f.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[123456789012345678901234567890]"));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let missing = write(&dir, "m.txt", &SAMPLE.replace("rhs: 1 2\n", ""));
    let out = run(&["solve", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing rhs"));

    let invalid = write(&dir, "i.txt", "source: 2\ntarget: 4\nmatrix:\n1\nrhs: 0\n");
    assert_eq!(run(&["solve", invalid.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "/nonexistent/problem.txt"]).status.code(), Some(1));
    let f = write(&dir, "s.txt", SAMPLE);
    assert_eq!(run(&["solve", f.to_str().unwrap(), "--strategy", "gauss"]).status.code(), Some(1));
    assert_eq!(run(&["bench", "--primes", "4"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_agrees() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sample.txt", SAMPLE);
    let out = run(&["verify", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all strategies agree"));
    assert!(text.contains("modular     skipped"));
}

#[test]
fn bench_csv_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["bench", "--seed", "42", "--csv", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
    assert!(a.starts_with("strategy,instances,solvable,inconsistent,agree_oracle,total_ms,median_ms\n"));
    assert_eq!(abelsolve::bench::strip_timing(&a), abelsolve::bench::strip_timing(&b));
}

#[test]
fn bench_zero_count() {
    let out = run(&["bench", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0/0"));
}
