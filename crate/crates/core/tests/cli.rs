//! End-to-end runs of the `confluent` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_confluent"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const K22: &str = "layer a b\nlayer c d\nedge a c\nedge a d\nedge b c\nedge b d\n";
const P4: &str = "layer u1 u2\nlayer l1 l2\nedge u1 l1\nedge u2 l1\nedge u2 l2\n";

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn k22_draws_four_tracks_without_crossings() {
    let out = run(&["--stats"], K22);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(svg.matches("<path").count(), 4);
    assert!(stderr(&out).contains("pair 0: cover size 1, crossings 0"));
}

#[test]
fn p4_uses_two_bicliques() {
    let out = run(&["--stats", "--format", "dot"], P4);
    assert!(out.status.success());
    assert!(stderr(&out).contains("pair 0: cover size 2"));
    let dot = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 3);
}

#[test]
fn depth_two_reports_both_covers() {
    let out = run(&["--stats", "--depth", "2"], K22);
    assert!(out.status.success());
    assert!(stderr(&out).contains("covers computed 3, covers laid out 2"));
}

#[test]
fn unsupported_depth_is_an_input_error() {
    let out = run(&["--depth", "3"], K22);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unsupported depth"));
}

#[test]
fn malformed_input_is_rejected_with_location() {
    let out = run(&[], "layer a\nlayer b\nedge a\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn invalid_graph_is_rejected() {
    let out = run(&[], "layer a b\nlayer c\nedge a c\nedge a c\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parallel edge"));
}

#[test]
fn bad_flag_value_exits_one() {
    assert_eq!(run(&["--format", "png"], K22).status.code(), Some(1));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["--format", "svg"][..],
        &["--format", "dot", "--placement", "crossings"][..],
    ] {
        let a = run(args, P4);
        let b = run(args, P4);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn reads_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.json");
    let output = dir.path().join("g.dot");
    std::fs::write(
        &input,
        r#"{"layers": [["a"], ["b"]], "edges": [["a", "b"]], "config": {"delta": 10}}"#,
    )
    .unwrap();
    let out = run(
        &[
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
            "--format",
            "dot",
        ],
        "",
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let dot = std::fs::read_to_string(output).unwrap();
    assert!(dot.contains(r#""a" -- "b""#));
}
