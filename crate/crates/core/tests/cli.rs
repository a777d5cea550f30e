//! End-to-end runs of the `lpacket` binary against the bundled corpus.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use lpacket_core::cli::parse;

const CORPUS: &[(&str, i32)] = &[("classical", 0), ("sp4_113", 0), ("synthetic", 0), ("empty", 0), ("obstruction", 2)];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn corpus(name: &str) -> PathBuf {
    root().join("corpus").join(format!("{name}.json"))
}

fn lpacket(args: &[&str], stdin: Option<&str>) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lpacket"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn lpacket");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap_or(-1))
}

fn golden(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{} differs from the current output", path.display());
}

#[test]
fn corpus_matches_goldens() {
    for &(name, code) in CORPUS {
        let file = corpus(name);
        let file = file.to_str().unwrap();
        for (format, ext) in [("text", "txt"), ("machine", "json")] {
            let (out, _, c) = lpacket(&["analyze", file, "--format", format], None);
            assert_eq!(c, code, "{name} {format}");
            golden(&root().join("tests/golden").join(format!("{name}.{ext}")), &out);
        }
    }
}

#[test]
fn runs_are_byte_identical() {
    let file = corpus("classical");
    let a = lpacket(&["analyze", file.to_str().unwrap(), "--format", "machine"], None);
    let b = lpacket(&["analyze", file.to_str().unwrap(), "--format", "machine"], None);
    assert_eq!(a, b);
}

#[test]
fn empty_machine_report() {
    let (out, err, code) = lpacket(&["analyze", "-", "--format", "machine"], Some(r#"{"version": 1, "parameters": []}"#));
    assert_eq!((out.as_str(), err.as_str(), code), ("{\"parameters\":[],\"version\":1}\n", "", 0));
}

#[test]
fn sample_text_lines() {
    let (out, _, code) = lpacket(&["analyze", corpus("sp4_113").to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.trim() == "S̄_φ ≅ (Z/2)^2"));
    assert!(out.lines().any(|l| l.trim().starts_with("orbit_count = ")));
}

#[test]
fn obstruction_is_printed() {
    let (out, err, code) = lpacket(&["analyze", corpus("obstruction").to_str().unwrap()], None);
    assert_eq!(code, 2);
    assert!(out.contains("obstruction (total shift (1)):"));
    assert!(out.contains("exhaustive assignments = 0"));
    assert!(err.contains("pairing-exists"));
}

#[test]
fn input_errors_exit_one() {
    let cases: &[(&[&str], Option<&str>)] = &[
        (&["analyze", "-"], Some("{\"version\": 1, \"parameters\": [")),
        (&["analyze", "-"], Some("{\"version\": 2, \"parameters\": []}")),
        (&["analyze", "-"], Some("{\"version\": 1, \"twist_group\": [2.0], \"parameters\": []}")),
        (&["analyze", "/nonexistent/file.json"], None),
        (&["analyze", "-", "--seed", "7"], Some("{\"version\": 1, \"parameters\": []}")),
        (&["analyze", "-", "--bogus"], Some("")),
        (&["normalize", "-"], Some("not json")),
    ];
    for (args, stdin) in cases {
        let (out, err, code) = lpacket(args, *stdin);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn out_of_range_twist_names_summand() {
    let text = r#"{"version": 1, "twist_group": [2], "parameters": [
        {"id": "p", "kind": "Sp", "n": 1, "summands": [
            {"id": "odd-one", "dim": 3, "type": "orthogonal", "twist": [5]}]}]}"#;
    let (_, err, code) = lpacket(&["analyze", "-"], Some(text));
    assert_eq!(code, 1);
    assert!(err.contains("odd-one"), "{err}");
}

#[test]
fn normalize_round_trips() {
    for &(name, _) in CORPUS {
        let file = corpus(name);
        let (once, _, c1) = lpacket(&["normalize", file.to_str().unwrap()], None);
        assert_eq!(c1, 0);
        let (twice, _, c2) = lpacket(&["normalize", "-"], Some(&once));
        assert_eq!(c2, 0);
        assert_eq!(once, twice, "{name}");
        let original = parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
        assert_eq!(parse(&once).unwrap(), original, "{name}");
    }
}

#[test]
fn sample_parses() {
    let f = parse(&std::fs::read_to_string(corpus("sp4_113")).unwrap()).unwrap();
    assert_eq!(f.parameters.len(), 1);
    assert_eq!(f.parameters[0].summands.len(), 3);
    assert_eq!(f.twist_group.build().unwrap().x().invariant_factors(), &[2, 2]);
}
