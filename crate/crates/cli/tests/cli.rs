//! Subprocess integration tests for the alexmod CLI: exit codes, output
//! shapes, report round-trips and determinism.

use std::io::Write;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_alexmod"))
        .args(args)
        .output()
        .expect("failed to run alexmod");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn temp_file(name: &str, content: &str) -> tempfile::TempPath {
    let mut f = tempfile::Builder::new()
        .suffix(name)
        .tempfile()
        .expect("temp file");
    f.write_all(content.as_bytes()).unwrap();
    f.into_temp_path()
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("decompose"));
    assert!(stdout.contains("verify"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, _) = run(&["decompose", "--bogus"]);
    assert_eq!(code, 1);
}

#[test]
fn missing_subcommand_is_usage_error() {
    let (code, _, _) = run(&[]);
    assert_eq!(code, 1);
}

#[test]
fn alexander_single_knot_prints_bare_polynomial() {
    let (code, stdout, _) = run(&["alexander", "--knot", "3_1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "t^2 - t + 1");
}

#[test]
fn alexander_whole_corpus() {
    let (code, stdout, _) = run(&["alexander", "--no-timing"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("3_1"));
    assert!(stdout.contains("t^2 - 3*t + 1"));
    assert!(stdout.contains("t^8 - 4*t^7 + 10*t^6 - 16*t^5 + 19*t^4 - 16*t^3 + 10*t^2 - 4*t + 1"));
}

#[test]
fn decompose_ten_99_shows_root_by_root_summands() {
    let (code, stdout, _) = run(&["decompose", "--knot", "10_99", "--no-timing"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("decomposition: t^2 - t + 1  ->  [2, 2]"));
    assert!(
        stdout.contains("L/(t - a)^2 (+) L/(t - a)^2 (+) L/(t - a^-1)^2 (+) L/(t - a^-1)^2"),
        "{stdout}"
    );
}

#[test]
fn verify_bundled_corpus_exits_zero() {
    let (code, stdout, _) = run(&["verify", "--no-timing"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("agreement: true").count(), 3);
}

#[test]
fn unknown_knot_is_validation_error() {
    let (code, _, stderr) = run(&["decompose", "--knot", "99_99"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("unknown knot name"));
}

#[test]
fn invalid_seifert_is_validation_error() {
    let path = temp_file(
        ".json",
        r#"[{"name": "odd", "seifert": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}]"#,
    );
    let (code, _, stderr) = run(&["alexander", "--knot-file", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(stderr.contains("even size"), "{stderr}");
}

#[test]
fn ragged_matrix_is_parse_error() {
    let path = temp_file(".json", r#"[{"name": "bad", "seifert": [[0, 1], [0]]}]"#);
    let (code, _, stderr) = run(&["alexander", "--knot-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("ragged"), "{stderr}");
}

#[test]
fn malformed_json_is_parse_error() {
    let path = temp_file(".json", "[{oops");
    let (code, _, _) = run(&["alexander", "--knot-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn csv_with_unicode_minus() {
    let path = temp_file(
        ".csv",
        "name,matrix\n3_1,\"[[\u{2212}1, 1], [0, \u{2212}1]]\"\n",
    );
    let (code, stdout, _) = run(&[
        "alexander",
        "--knot-file",
        path.to_str().unwrap(),
        "--knot",
        "3_1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "t^2 - t + 1");
}

#[test]
fn json_report_round_trips() {
    let (code, stdout, _) = run(&["verify", "--format", "json", "--no-timing"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(parsed["mode"], "verify");
    assert_eq!(parsed["knots"][2]["name"], "10_99");
    assert_eq!(parsed["knots"][2]["agreement"], true);
    assert_eq!(
        parsed["knots"][2]["decomposition"][0]["factor"],
        "t^2 - t + 1"
    );
    // re-serialization preserves every value exactly
    let reprinted = serde_json::to_string_pretty(&parsed).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(parsed, reparsed);
}

#[test]
fn reports_are_deterministic_without_timing() {
    let (c1, first, _) = run(&["verify", "--format", "json", "--no-timing", "--seed", "9"]);
    let (c2, second, _) = run(&["verify", "--format", "json", "--no-timing", "--seed", "9"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second, "reports must be byte-identical");
}

#[test]
fn rep_requires_knot_name() {
    let (code, _, stderr) = run(&["rep", "--level", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("usage error"), "{stderr}");
}

#[test]
fn rep_emits_solutions_and_checks() {
    let (code, stdout, _) = run(&[
        "rep", "--knot", "10_99", "--level", "2", "--trials", "25", "--seed", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("solution ").count(), 2);
    assert_eq!(stdout.matches("passed (25 trials)").count(), 2);
}

#[test]
fn rep_json_contains_exact_matrix_strings() {
    let (code, stdout, _) = run(&[
        "rep", "--knot", "3_1", "--level", "3", "--trials", "10", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let sol = &parsed["classes"][0]["branches"][0]["solutions"][0];
    assert_eq!(sol["homomorphism"]["passed"], true);
    let matrix = sol["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 3);
    assert_eq!(matrix[0].as_array().unwrap().len(), 3);
    // lower-left block of the triangular image is zero
    assert_eq!(matrix[1][0], "0");
    assert_eq!(matrix[2][0], "0");
}

#[test]
fn empty_table_is_ok() {
    let path = temp_file(".json", "[]");
    let (code, stdout, _) = run(&["decompose", "--knot-file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "");
}

#[test]
fn unknot_via_file() {
    let path = temp_file(".json", r#"[{"name": "0_1", "seifert": []}]"#);
    let (code, stdout, _) = run(&[
        "decompose",
        "--knot-file",
        path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("alexander: 1"));
    assert!(stdout.contains("root classes: none"));
}

#[test]
fn max_n_cap_too_small_is_internal_error() {
    let (code, _, stderr) = run(&["decompose", "--knot", "10_99", "--max-n", "2"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("did not terminate"), "{stderr}");
}
