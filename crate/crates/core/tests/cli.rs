//! End-to-end runs of the command-line binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_irregularity-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# irregularity-lab v1"));
    lines.skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn compute_on_path_from_file() {
    let dir = std::env::temp_dir().join(format!("irregularity-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trees.g6");
    std::fs::write(&path, "DhC\n").unwrap();
    let out = run(&["compute", "--index", "Ap", "--p", "1,2", "--in", path.to_str().unwrap()], "");
    assert!(out.status.success());
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][3], "2");
    assert_eq!(rows[1][3], "2");
    assert_eq!(rows[1][5], "exact");
    assert_eq!(rows[1][4], "1.41421356237");
}

#[test]
fn generate_pipes_into_compute() {
    let generated = run(&["generate", "--family", "bethe:k=3,d=2"], "");
    assert!(generated.status.success());
    let out = run(&["compute", "--index", "Ap", "--p", "1"], &stdout(&generated));
    assert_eq!(csv_rows(&out)[0][4], "10");
}

#[test]
fn verify_join_identity_exits_zero() {
    let out = run(&["verify", "--claim", "thm-3.7", "--universe", "trees:4..9", "--p", "1,2,3", "--format", "csv"], "");
    assert_eq!(out.status.code(), Some(0));
    for row in csv_rows(&out) {
        assert_eq!(row[4], row[6], "every report is an equality");
        assert_eq!(row[8], "0");
    }
}

#[test]
fn violations_exit_one() {
    let out = run(&["verify", "--claim", "cor-3.3-printed", "--universe", "trees:3..4", "--summary-only"], "");
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["summary"]["violated"], 3);
    assert_eq!(v[0]["findings"][0]["id"], "join-sigma-sign");
}

#[test]
fn usage_and_guard_exit_codes() {
    assert_eq!(run(&["compute", "--index", "nope"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "--claim", "thm-0.0", "--universe", "trees:4"], "").status.code(), Some(2));
    assert_eq!(run(&["compute"], "not graph6 ~~~\n").status.code(), Some(2));
    assert_eq!(run(&["scan", "--n", "20"], "").status.code(), Some(3));
    assert_eq!(run(&["enumerate", "--universe", "graphs:9"], "").status.code(), Some(3));
    assert_eq!(run(&["enumerate", "--universe", "random-trees:n=6,count=2"], "").status.code(), Some(2));
}

#[test]
fn random_universes_are_reproducible() {
    let args = ["enumerate", "--universe", "random-graphs:n=8,m=11,count=5", "--seed", "42"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["verify", "--claim", "thm-3.4", "--universe", "graphs:2..5", "--p", "0.5,2"];
    let one = run(&[&base[..], &["--jobs", "1"]].concat(), "");
    let many = run(&[&base[..], &["--jobs", "4"]].concat(), "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn enumerate_then_verify_from_stdin() {
    let trees = run(&["enumerate", "--universe", "trees:7"], "");
    assert_eq!(stdout(&trees).lines().count(), 11);
    let out = run(&["verify", "--claim", "cor-4.1", "--format", "csv"], &stdout(&trees));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(csv_rows(&out)[0][4], "11");
}

#[test]
fn scan_reports_extremes() {
    let out = run(&["scan", "--n", "10", "--p", "1"], "");
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["scan"]["max_value"], 72);
    assert_eq!(v[0]["second_minimum"]["attainers_match"], true);
}
