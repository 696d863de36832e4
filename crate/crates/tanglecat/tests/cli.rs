//! The command-line front end: exit codes and deterministic output.

mod common;

use std::process::Command;

use common::fixture_path;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = vec![];
    let mut err = vec![];
    let code = tanglecat::cli::run(std::iter::once("tanglecat").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_string()
}

fn scratch(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("tanglecat-cli-{}-{name}.tgl", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn alexander_of_the_trefoil() {
    let (code, out, _) = run(&["alexander", "--oracle", &path("trefoil")]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("raw: "));
    assert_eq!(lines[1], "t - 1 + t^-1");
    assert!(lines[2].starts_with("oracle: "));
    assert!(lines[2].ends_with("(3 states)"));
}

#[test]
fn binary_output_is_byte_stable() {
    let exe = env!("CARGO_BIN_EXE_tanglecat");
    let fig8 = path("figure_eight");
    for args in [
        vec!["alexander", "--oracle", fig8.as_str()],
        vec!["eval", "--framework", "viro", "--grading", "multi", fig8.as_str()],
        vec!["states", fig8.as_str()],
        vec!["quiverlab", "--cutoff", "8"],
        vec!["verify", "--max-n", "3"],
    ] {
        let a = Command::new(exe).args(&args).output().unwrap();
        let b = Command::new(exe).args(&args).output().unwrap();
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn eval_prints_json() {
    let (code, out, _) = run(&["eval", "--framework", "osz", &path("trefoil")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v.get("entries").is_some());
}

#[test]
fn terminal_on_an_open_tangle_is_a_usage_error() {
    let f = scratch("open", "top 2 orient -+\nterm lr\n");
    let (code, _, err) = run(&["eval", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("terminal"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--max-n", "4"]).0, 0);
    assert_eq!(run(&["quiverlab", "--cutoff", "8"]).0, 0);
    assert_eq!(run(&["quiverlab", "--cutoff", "4"]).0, 2);
    assert_eq!(run(&["verify", "--max-n", "9"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["alexander", "/nonexistent/diagram.tgl"]).0, 2);
    assert_eq!(run(&["alexander", &scratch("bad", "xp 1 2\n")]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
