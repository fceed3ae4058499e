//! End-to-end tests against the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn finadd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finadd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(content.as_bytes()).expect("write");
    file
}

const COHERENT: &str = r#"{"atoms":3,"assessments":[
    {"event":[0],"p":"3/10"},
    {"event":[1],"p":"1/2"},
    {"event":[0,1,2],"p":"1"}]}"#;

const TWO_SIXTY: &str = r#"{"atoms":2,"assessments":[
    {"event":[0],"p":"3/5"},
    {"event":[1],"p":"3/5"}]}"#;

#[test]
fn coherent_assessment_exits_zero_with_weights() {
    let file = write_temp(COHERENT);
    let out = finadd(&["coherence", "check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with(r#"{"verdict":"coherent","weights":["#), "got {text}");
}

#[test]
fn overbought_pair_exits_three_with_dutch_book() {
    let file = write_temp(TWO_SIXTY);
    let out = finadd(&["coherence", "check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"verdict":"incoherent","dutch_book":{"stakes":["-1/1","-1/1"],"guaranteed_loss":"1/5"}}"#
    );
}

#[test]
fn extension_interval_prints_comma_separated_bounds() {
    let file = write_temp(COHERENT);
    let out = finadd(&["coherence", "extend", file.path().to_str().unwrap(), "--event", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "4/5,4/5");
}

#[test]
fn extension_interval_json_form() {
    let file = write_temp(COHERENT);
    let out = finadd(&[
        "coherence",
        "extend",
        file.path().to_str().unwrap(),
        "--event",
        "0,1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"lower":"4/5","upper":"4/5"}"#);
}

#[test]
fn malformed_assessment_file_exits_one() {
    let file = write_temp("not json at all");
    let out = finadd(&["coherence", "check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn density_of_finite_set_is_zero() {
    let out = finadd(&["density", "eval", "--set", r#"{"finite":[1,2,3]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"kind":"exists","value":"0/1"}"#);
}

#[test]
fn density_of_geometric_blocks_diverges_with_exit_two() {
    let out = finadd(&["density", "eval", "--set", r#"{"geometric_blocks":{"ratio":2}}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        stdout(&out).trim(),
        r#"{"kind":"divergent","liminf":"1/3","limsup":"2/3","exact":true}"#
    );
}

#[test]
fn symmetric_escape_splits_mass_between_both_infinities() {
    let out = finadd(&["pdlim", "--family", r#"{"kind":"symmetric_escape"}"#]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains(r#""class":"proper_finitely_additive","minus_inf_mass":"1/2","plus_inf_mass":"1/2""#),
        "got {text}"
    );
}

#[test]
fn dead_tail_cylinder_probability() {
    let out = finadd(&["bernoulli", "cylinder", "--law", "q", "--p", "1/3", "--cyl", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""probability":"2/9""#));
}

#[test]
fn oscillation_checkpoints_first_two_cycles() {
    let out = finadd(&["bernoulli", "path", "--law", "qstar", "--p", "1/2", "--checkpoints", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains(r#""trough_frequency":"1/2""#), "got {}", lines[0]);
    assert!(lines[0].contains(r#""peak_frequency":"5/6""#), "got {}", lines[0]);
    assert!(lines[1].contains(r#""trough_frequency":"5/24""#), "got {}", lines[1]);
    assert!(lines[1].contains(r#""peak_frequency":"101/120""#), "got {}", lines[1]);
}

#[test]
fn band_probability_small_case() {
    let out = finadd(&["cantelli", "--p", "1/2", "--eps", "3/10", "--n", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), r#"{"probability":"3/4"}"#);
}

#[test]
fn cf_table_is_reproducible() {
    let args = ["fisi", "cf", "--phi", "gaussian", "--t", "0.5", "--xi-grid", "-1:1:0.5",
        "--n", "64", "--mc-samples", "100", "--seed", "9"];
    let first = finadd(&args);
    let second = finadd(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.starts_with("xi\tlimit_re\tlimit_im\tsum_re\tsum_im\temp_re"), "got {text}");
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn path_plot_writes_svg() {
    let dir = tempfile::tempdir().expect("temp dir");
    let svg = dir.path().join("freq.svg");
    let out = finadd(&[
        "bernoulli", "path", "--law", "q", "--p", "1/2", "--horizon", "256",
        "--plot", svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&svg).expect("plot written");
    assert!(content.starts_with("<svg"));
    assert!(content.trim_end().ends_with("</svg>"));
}

#[test]
fn streamed_output_survives_early_pipe_close() {
    let pipeline = format!(
        "{} fisi cf --phi degenerate --xi-grid -4:4:0.005 --n 4 | head -n 2",
        env!("CARGO_BIN_EXE_finadd")
    );
    let out = Command::new("sh").args(["-c", &pipeline]).output().expect("shell runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn unknown_subcommand_exits_one() {
    let out = finadd(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tol_rejected_outside_fisi() {
    let out = finadd(&["cantelli", "--p", "1/2", "--eps", "1/4", "--n", "2", "--m", "1",
        "--tol", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
}
