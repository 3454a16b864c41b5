use std::io::Write;
use std::process::{Command, Stdio};

fn edr() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_edr"));
    c.env_remove(edr_cli::MAX_SEARCH_ENV);
    c
}

fn stdout(c: &mut Command) -> (i32, String, String) {
    let out = c.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, r#"{"ring": "zmod:12", "rows": [[8, 6], [4, 10]]}"#).unwrap();
    let (code, out, err) = stdout(edr().args(["snf", "--input"]).arg(&path));
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ring"], "zmod:12");
    assert_eq!(v["verified"], true);
}

#[test]
fn matrix_from_stdin() {
    let mut child = edr()
        .args(["--output", "pretty", "snf", "--ring", "z", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2 4\n6 8\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("D =\n2 0\n0 4\n"));
}

#[test]
fn search_window_comes_from_environment() {
    let (code, out, _) = stdout(
        edr()
            .args(["check", "--ring", "z", "--property", "stable-range-1", "--bound", "7"])
            .env(edr_cli::MAX_SEARCH_ENV, "50"),
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["searchBound"], 7);
    assert_eq!(v["searchWindow"], 50);

    let (code, _, err) = stdout(
        edr()
            .args(["check", "--ring", "z", "--property", "stable-range-1"])
            .env(edr_cli::MAX_SEARCH_ENV, "wide"),
    );
    assert_eq!(code, 2);
    assert!(err.contains("EDR_MAX_SEARCH"), "{err}");
}

#[test]
fn completion_payload_and_trace() {
    let payload = r#"{"ring": "z", "row": [6, 10, 15], "d": 1}"#;
    let (code, out, err) = stdout(edr().args(["complete", "--input", payload]));
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix"][0], serde_json::json!([6, 10, 15]));
    let names: Vec<&str> = v["trace"].as_array().unwrap().iter().map(|t| t["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"u") && names.contains(&"w"), "{names:?}");

    let (_, pretty, _) = stdout(edr().args(["--output", "pretty", "complete", "--input", payload]));
    assert!(!pretty.contains("trace"));
    assert!(pretty.starts_with("det = 1\n"));
}

#[test]
fn default_determinant_is_the_row_gcd() {
    let (code, out, _) = stdout(edr().args(["complete", "--ring", "z", "--row", "-4,6,10"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 2);
}

#[test]
fn verification_can_be_skipped() {
    let (code, out, _) = stdout(edr().args(["--verify", "false", "snf", "--ring", "z", "--input", "3"]));
    assert_eq!(code, 0);
    assert!(out.contains("\"verified\":false"));
}
