use std::io::Write;
use std::process::{Command, Output, Stdio};

use theta_envelope::tables::envelope_table;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, None)
}

fn run_env(args: &[&str], stdin: &str, data_dir: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_theta-envelope"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match data_dir {
        Some(dir) => cmd.env("THETA_ENVELOPE_DATA", dir),
        None => cmd.env_remove("THETA_ENVELOPE_DATA"),
    };
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn table5_jsonl() -> String {
    envelope_table(5)
        .unwrap()
        .rows
        .iter()
        .map(|row| {
            let [a, b, c, d, e] = &row.envelope;
            format!(r#"{{"r":2,"s":1,"n":{},"a":"{a}","b":"{b}","c":"{c}","d":"{d}","e":"{e}"}}"#, row.n)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn verify_table5_records() {
    let out = run(&["verify"], &table5_jsonl());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("31 records: 31 passed"));
}

#[test]
fn verify_names_the_failing_equation() {
    let line = r#"{"r":2,"s":1,"n":3,"a":"2","b":"5/4","c":"1750001/1000000","d":"7/4","e":"13/4"}"#;
    let out = run(&["verify"], line);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("line 1: FAIL equation 1"), "{}", stdout(&out));
}

#[test]
fn verify_empty_and_malformed_input() {
    let out = run(&["verify"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 records"));
    let out = run(&["verify"], "\n{\"r\": 2,\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("line 2: parse error"), "{}", stdout(&out));
}

#[test]
fn generated_records_reverify() {
    for format in ["jsonl", "csv"] {
        let gen = run(&["generate", "5", "3", "2", "--count", "2", "--format", format], "");
        assert_eq!(gen.status.code(), Some(0));
        let text = stdout(&gen);
        let check = run(&["verify", "--format", format], &text);
        assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
        assert!(stdout(&check).contains("2 records: 2 passed"));
    }
    let gen = run(&["generate", "1", "0", "1", "--count", "3"], "");
    assert_eq!(stdout(&gen).lines().count(), 3);
}

#[test]
fn generate_rejects_irrational_sine() {
    let out = run(&["generate", "2", "1", "1", "--count", "1"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Pythagorean"));
}

#[test]
fn reproduce_is_deterministic_across_workers() {
    let one = run(&["reproduce", "all", "--workers", "1"], "");
    let two = run(&["reproduce", "all", "--workers", "3"], "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let text = stdout(&one);
    assert!(text.contains("table 2: 93 checked, 0 mismatches"));
    assert!(text.contains("table 5: 31 checked, 0 mismatches"));
    assert!(text.contains("table 1: 4 checked, 0 mismatches"));
}

#[test]
fn reproduce_needs_its_data() {
    let empty = std::env::temp_dir().join(format!("theta-envelope-empty-{}", std::process::id()));
    std::fs::create_dir_all(&empty).unwrap();
    let out = run_env(&["reproduce", "3"], "", Some(&empty));
    assert_ne!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&empty).unwrap();
}

#[test]
fn classify_examples() {
    for (args, tag) in [
        (["classify", "2", "1", "3"], "torsion: Z/8Z"),
        (["classify", "25", "7", "1"], "torsion: Z/2Z x Z/8Z"),
        (["classify", "2", "1", "1/2"], "torsion: Z/4Z"),
    ] {
        let out = run(&args, "");
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains(tag), "{}", stdout(&out));
    }
    assert!(stdout(&run(&["classify", "2", "1", "1/2"], "")).contains("rank witness"));
    assert_eq!(run(&["classify", "2", "1", "0"], "").status.code(), Some(2));
}

#[test]
fn search_examples() {
    let out = run(&["search", "envelope", "2", "1", "7", "--height", "2000"], "");
    let text = stdout(&out);
    assert!(text.starts_with("{\"r\":2,\"s\":1,\"n\":7"), "{text}");
    assert_eq!(run(&["verify"], &text).status.code(), Some(0));
    let out = run(&["search", "congruent", "1", "0", "1", "--height", "100"], "");
    assert!(stdout(&out).contains("unknown within budget"));
    let out = run(&["search", "rank", "2", "1", "2"], "");
    assert!(stdout(&out).contains("rank >= 1"));
    assert!(stdout(&out).contains("the point P"));
}

#[test]
fn transform_roundtrip() {
    let out = run(&["transform", "cubic-to-quartic", "2", "1", "2", "3", "-12", "36"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (x, z) = inner.split_once(", ").unwrap();
    let back = run(&["transform", "quartic-to-cubic", "2", "1", "2", "3", x, z], "");
    assert_eq!(stdout(&back).trim(), "(-12, 36)");
    assert_eq!(stdout(&run(&["transform", "et-to-ct", "6", "inf"], "")).trim(), "(-1, 0)");
    assert_eq!(stdout(&run(&["transform", "ct-to-et", "6", "-1", "0"], "")).trim(), "O");
    let far = run(&["transform", "et-to-ct", "6", "36", "222"], "");
    assert_eq!(stdout(&far).trim(), "point at infinity");
    assert_eq!(run(&["transform", "ct-to-et", "6", "2", "3"], "").status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["reproduce", "9"], "").status.code(), Some(2));
    assert_eq!(run(&["search", "envelope", "2", "1", "0"], "").status.code(), Some(2));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}
