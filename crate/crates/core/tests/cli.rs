#![allow(clippy::excessive_precision)]

use sl3_maass::cli::{run_with, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};
use std::path::Path;

const LIFT: [&str; 4] = ["--alpha-im", "-19.06739", "--beta-im", "19.06739"];

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sl3-maass").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_lift<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(LIFT);
    v.extend(rest);
    v
}

fn write_form(dir: &Path, n_max: u32) -> String {
    let mut text = String::from("# synthetic\nalpha_im 1.3\nbeta_im 2.1\ngamma_im -3.4\n");
    for n in 1..=n_max {
        let v = if n == 1 { 1.0 } else { 0.5 / n as f64 };
        text.push_str(&format!("c1 {n} {v} {}\n", 0.01 * n as f64 * f64::from(n > 1)));
    }
    let path = dir.join(format!("form{n_max}.txt"));
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

/// The value cell of the single result row.
fn value_column(out: &str) -> Vec<String> {
    let mut lines = out.lines().skip_while(|l| !l.is_empty()).skip(2);
    let row = lines.next().unwrap();
    row.split("  ").filter(|s| !s.is_empty()).map(|s| s.trim().to_string()).collect()
}

#[test]
fn whittaker_reports_value_and_algorithm() {
    let (code, out, err) = run(&with_lift("whittaker", &["--y1", "0.05", "--y2", "3"]));
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("smallarg"));
    assert!(err.contains("wall time"));
    let cells = value_column(&out);
    let w: f64 = cells[2].split(' ').next().unwrap().parse().unwrap();
    assert!((w / 4.27010556501423807e-26 - 1.0).abs() < 1e-10);
}

#[test]
fn output_is_deterministic() {
    let args = with_lift("whittaker", &["--y1", "0.7", "--y2", "1.1", "--digits", "15"]);
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
}

#[test]
fn series_estimates_bracket_stade() {
    let mut vals = Vec::new();
    for algo in ["stade", "origin"] {
        let (code, out, _) = run(&with_lift("whittaker", &["--y1", "0.3", "--y2", "0.3", "--algo", algo, "--digits", "17"]));
        assert_eq!(code, EXIT_OK);
        let cells = value_column(&out);
        let scaled: f64 = cells[1].split(' ').next().unwrap().parse().unwrap();
        let est: f64 = cells[3].parse().unwrap();
        vals.push((scaled, est));
    }
    let ((s, es), (o, eo)) = (vals[0], vals[1]);
    assert!(((s - o) / s).abs() <= es + eo);
}

#[test]
fn xcheck_exit_codes() {
    let (code, out, _) = run(&with_lift("xcheck", &["--grid", "0.3"]));
    assert_eq!(code, EXIT_OK);
    // one point gives a 1 x 1 table
    assert!(out.lines().any(|l| l.trim_start().starts_with("0.3") && l.split_whitespace().count() == 2));
    let (code, _, _) = run(&with_lift("xcheck", &["--grid", "0.3", "--tol", "1e-30"]));
    assert_eq!(code, EXIT_NUMERIC);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["whittaker", "--y1", "1"]).0, EXIT_USAGE);
    assert_eq!(run(&with_lift("whittaker", &["--y1", "-1", "--y2", "1"])).0, EXIT_USAGE);
    assert_eq!(run(&with_lift("whittaker", &["--y1", "1", "--y2", "1", "--algo", "magic"])).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    // a degenerate triple has no origin series
    let (code, _, err) = run(&["whittaker", "--alpha-im", "0", "--beta-im", "0", "--y1", "1", "--y2", "1", "--algo", "origin"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("error"));
}

#[test]
fn numeric_failure_exit_code() {
    let (code, _, err) = run(&with_lift("whittaker", &["--y1", "5", "--y2", "5", "--algo", "origin"]));
    assert_eq!(code, EXIT_NUMERIC, "{err}");
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_form(dir.path(), 30);
    let out1 = dir.path().join("a.txt");
    let out2 = dir.path().join("b.txt");
    let (code, _, err) = run(&["export-coeffs", "--coeffs", &src, "--out", out1.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, _, _) = run(&["export-coeffs", "--coeffs", out1.to_str().unwrap(), "--out", out2.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (a, b) = (std::fs::read_to_string(out1).unwrap(), std::fs::read_to_string(out2).unwrap());
    assert_eq!(a, b);
    assert!(a.lines().filter(|l| l.starts_with("c2 ")).count() == 900);
}

#[test]
fn maass_eval_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_form(dir.path(), 60);
    let csv = dir.path().join("out.csv");
    let (code, out, err) = run(&[
        "maass-eval", "--coeffs", &src, "--point", "0.1,0.2,0.3,0.9,0.8", "--eps", "1e-6", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("f(z)"));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("f(z),"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn truncated_coefficients_are_diagnosed() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_form(dir.path(), 1);
    let (code, _, err) = run(&["maass-eval", "--coeffs", &src, "--point", "0.1,0.2,0.3,0.9,0.8", "--eps", "1e-6"]);
    assert_ne!(code, EXIT_OK);
    assert!(err.contains("missing Fourier coefficient"), "{err}");
}

#[test]
fn automorphy_under_translation() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_form(dir.path(), 60);
    let (code, out, err) = run(&[
        "automorphy", "--coeffs", &src, "--point", "0.1,0.2,0.3,0.9,0.8", "--eps", "1e-6", "--word", "T3",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let line = out.lines().find(|l| l.starts_with("residual")).unwrap();
    let r: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(r < 1e-10);
}

#[test]
fn malformed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "alpha_im 1\nbeta_im 2\ngamma_im -3\nc1 1 one 0\n").unwrap();
    let (code, _, err) = run(&["maass-eval", "--coeffs", bad.to_str().unwrap(), "--point", "0,0,0,1,1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 4"), "{err}");
    let src = write_form(dir.path(), 5);
    let (code, _, _) = run(&["maass-eval", "--coeffs", &src, "--point", "0,0,0,1"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run(&["maass-eval", "--coeffs", "/nonexistent/file", "--point", "0,0,0,1,1"]);
    assert_eq!(code, EXIT_USAGE);
}
