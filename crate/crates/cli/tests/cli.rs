use std::collections::HashSet;
use std::io::Write;
use std::process::{Command, Output};

use clap::CommandFactory;
use profinite_cli::{Cli, OPERATIONS};

fn profinite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_profinite")).args(args).output().expect("binary runs")
}

fn temp_json(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("profinite-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn dispatch_table_covers_every_subcommand_once() {
    let cmd = Cli::command();
    let names: Vec<String> = cmd.get_subcommands().map(|c| c.get_name().to_string()).collect();
    let table: Vec<&str> = OPERATIONS.iter().map(|(s, _)| *s).collect();
    assert_eq!(names.len(), table.len());
    for n in &names {
        assert_eq!(table.iter().filter(|t| **t == n).count(), 1, "{n}");
    }
    let ops: HashSet<&str> = OPERATIONS.iter().map(|(_, o)| *o).collect();
    assert_eq!(ops.len(), OPERATIONS.len(), "an operation is exposed twice");
}

#[test]
fn level_one_json() {
    let out = profinite(&["level", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(v["le"], serde_json::json!([[0, 1], [2, 3]]));
}

#[test]
fn malformed_json_exits_with_3() {
    let path = temp_json("bad.json", "{\"elements\": [\"a\", \n");
    let out = profinite(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json:2:"), "{err}");
}

#[test]
fn missing_file_exits_with_3() {
    assert_eq!(profinite(&["dot", "/nonexistent/p.json"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(profinite(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(profinite(&["level"]).status.code(), Some(2));
    assert_eq!(profinite(&["verify-all", "--only", "12"]).status.code(), Some(2));
}

#[test]
fn failed_validation_exits_with_1() {
    let path = temp_json("cycle.json", r#"{"elements":["a","b"],"le":[[0,1],[1,0]]}"#);
    let out = profinite(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("antisymmetry"));
}

#[test]
fn meet_criterion_example() {
    let path = temp_json(
        "const.json",
        r#"{"domain":{"elements":["1","2"],"le":[]},"codomain":{"elements":["*"],"le":[]},"assignment":[0,0]}"#,
    );
    let out = profinite(&["meet-criterion", path.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], false);
}

#[test]
fn symbolic_points() {
    let out = profinite(&["compare", "0", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "<");
    let out = profinite(&["isolated", "012(2)"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "true");
    let out = profinite(&["isolated", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "false");
}

#[test]
fn same_seed_same_output() {
    let a = profinite(&["--seed", "7", "--samples", "300", "verify-square", "2", "--json"]);
    let b = profinite(&["--seed", "7", "--samples", "300", "verify-square", "2", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_all_passes() {
    let out = profinite(&["verify-all", "--seed", "42"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 11);
}
