use std::io::Write;
use std::process::{Command, Output, Stdio};

const CONSTANTS: &str = "A0 = 1\nA1 = 1\nA2 = -2\n";

fn foliation(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foliation"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_json_from_stdin() {
    let out = foliation(&["analyze", "--format", "json", "-"], CONSTANTS);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": \"I\""), "{text}");
    assert!(text.contains("X0*X1*X2^-2"), "{text}");
}

#[test]
fn text_is_the_default_format() {
    let out = foliation(&["dichotomy", "-"], CONSTANTS);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: I"));
}

#[test]
fn output_is_deterministic() {
    let a = foliation(&["analyze", "--format", "json", "-"], CONSTANTS);
    let b = foliation(&["analyze", "--format", "json", "-"], CONSTANTS);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reads_a_file() {
    let dir = std::env::temp_dir().join(format!("foliation-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.txt");
    std::fs::write(&path, "h1 = u1 + u2 - 1\nh2 = u1 - u2\n").unwrap();
    let out = foliation(&["bkk", "--format", "json", path.to_str().unwrap()], "");
    std::fs::remove_dir_all(&dir).ok();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("\"agreement\": true"));
}

#[test]
fn blowup_tree_respects_chart_flag() {
    let out = foliation(
        &["blowup-tree", "--chart", "2", "--max-depth", "8", "-"],
        CONSTANTS,
    );
    assert!(out.status.success());
    let bad = foliation(&["blowup-tree", "--chart", "5", "-"], CONSTANTS);
    assert!(!bad.status.success());
}

#[test]
fn parse_errors_exit_nonzero_with_position() {
    let out = foliation(&["analyze", "-"], "A0 = X0 +\nA1 = 1\nA2 = -1\n");
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn non_closed_form_is_rejected() {
    let out = foliation(&["analyze", "-"], "A0 = 1\nA1 = 1\nA2 = 1\n");
    assert!(!out.status.success());
}

#[test]
fn missing_file_exits_nonzero() {
    let out = foliation(&["polygon", "/nonexistent/input.txt"], "");
    assert!(!out.status.success());
}
