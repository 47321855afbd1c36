//! End-to-end CLI tests: documented outputs, exit codes, JSON schema
//! stability, and byte-determinism across thread counts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_heappoly")
}

fn write_host(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("heappoly-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn k3_path() -> PathBuf {
    write_host("k3.hg", "2 3\n1 2\n1 3\n2 3\n")
}

fn k4_path() -> PathBuf {
    write_host("k4.hg", "# K4\n2 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
}

fn edge3_path() -> PathBuf {
    write_host("edge3.hg", "3 3\n1 2 3\n")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn charpoly_k4_documented_output() {
    let host = k4_path();
    let out = run(&["charpoly", host.to_str().unwrap(), "--codegree", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["degree"], 4);
    assert_eq!(v["coeffs"]["0"], "1");
    assert_eq!(v["coeffs"]["2"], "-6");
    assert_eq!(v["coeffs"]["3"], "-8");
    assert_eq!(v["coeffs"]["4"], "-3");
    assert!(v["coeffs"].get("1").is_none(), "zero coefficients omitted");
}

#[test]
fn charpoly_single_edge_all_methods_agree() {
    let host = edge3_path();
    let out = run(&[
        "charpoly",
        host.to_str().unwrap(),
        "--codegree",
        "12",
        "--method",
        "all",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["degree"], 12);
    assert_eq!(v["coeffs"]["0"], "1");
    assert_eq!(v["coeffs"]["3"], "-3");
    assert_eq!(v["coeffs"]["6"], "3");
    assert_eq!(v["coeffs"]["9"], "-1");
    assert!(v["coeffs"].get("12").is_none());
}

#[test]
fn charpoly_edge_variables() {
    let host = edge3_path();
    let out = run(&[
        "charpoly",
        host.to_str().unwrap(),
        "--edge-vars",
        "--codegree",
        "3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["edge_vars"]["3"]["e1^3"], "-3");
}

#[test]
fn jacobi_vertex_and_edge_anchors() {
    let host = k3_path();
    let out = run(&[
        "jacobi",
        host.to_str().unwrap(),
        "--vertex",
        "1",
        "--order",
        "4",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["match"], true);
    let counts: Vec<String> = v["walk_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(counts, ["1", "0", "2", "2", "6"]);

    let out = run(&[
        "jacobi",
        host.to_str().unwrap(),
        "--edge",
        "1",
        "--order",
        "4",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["match"], true);
    let counts: Vec<String> = v["pyramid_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(counts, ["1", "0", "1", "2", "3"]);
}

#[test]
fn exit_codes() {
    // missing anchor: exit 2
    let host = k3_path();
    let out = run(&["jacobi", host.to_str().unwrap(), "--vertex", "9"]);
    assert_eq!(out.status.code(), Some(2));
    // rank mismatch for jacobi: exit 2
    let host3 = edge3_path();
    let out = run(&["jacobi", host3.to_str().unwrap(), "--vertex", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // unreadable host: exit 1
    let out = run(&["charpoly", "/definitely/not/a/file.hg"]);
    assert_eq!(out.status.code(), Some(1));
    // malformed host: exit 1
    let bad = write_host("bad.hg", "2 3\n1 2 3\n");
    let out = run(&["charpoly", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // duplicate edge lines rejected for simple hosts: exit 1
    let dup = write_host("dup.hg", "2 3\n1 2\n1 2\n");
    let out = run(&["charpoly", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // infeasible bound: exit 2
    let host = k4_path();
    let out = run(&["charpoly", host.to_str().unwrap(), "--codegree", "25"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown verify suite: exit 1
    let out = run(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suite_reports_pass_lines() {
    let out = run(&["verify", "k4-ledger"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 4);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn output_is_byte_stable_across_thread_counts() {
    let host = k4_path();
    let run_with = |threads: &str| {
        Command::new(bin())
            .env("HEAPPOLY_THREADS", threads)
            .args(["charpoly", host.to_str().unwrap(), "--method", "all"])
            .output()
            .unwrap()
    };
    let a = run_with("1");
    let b = run_with("8");
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn root_series_and_trace_emit_json() {
    let host = edge3_path();
    let out = run(&["root-series", host.to_str().unwrap(), "--order", "9"]);
    let v = stdout_json(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["series"]["coeffs"]["3"], "-3/8");

    let out = run(&[
        "trace",
        host.to_str().unwrap(),
        "--codegree",
        "3",
        "--edge-vars",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["3"]["e1^3"], "9");
}

#[test]
fn walks_subcommand_counts() {
    let host = k3_path();
    let out = run(&["walks", host.to_str().unwrap(), "--order", "4"]);
    let v = stdout_json(&out);
    let counts: Vec<String> = v["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(counts, ["3", "0", "6", "6", "18"]);
}
