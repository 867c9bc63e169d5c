//! End-to-end CLI tests against the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

const IMMEDIATE_CUT: &str = "trace 2\n\
                             state 1 1 1 1 0\n\
                             state 1 2 1 2 0\n\
                             state 2 1 1 0 1\n\
                             state 2 2 1 1 2\n";

const NOCUT_PAIR: &str = "trace 2\n\
                          state 1 1 1 1 0\n\
                          state 2 1 1 1 1\n";

const ADVANCE_ONCE: &str = "trace 2\n\
                            state 1 1 1 1 0\n\
                            state 1 2 1 2 0\n\
                            state 2 1 1 1 1\n\
                            state 2 2 1 1 2\n";

fn firstcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_firstcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_trace(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn detect_prints_cut_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", IMMEDIATE_CUT);
    for algo in ["seq", "opt", "jls", "brute"] {
        let out = firstcut(&["detect", "--input", path.to_str().unwrap(), "--algo", algo]);
        assert_eq!(out.status.code(), Some(0), "{algo}");
        let text = stdout(&out);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("cut 1 1"), "{algo}");
        assert_eq!(lines.next(), Some("state 1 1 1 0"), "{algo}");
        assert_eq!(lines.next(), Some("state 2 1 0 1"), "{algo}");
    }
}

#[test]
fn detect_reports_advanced_cut_with_original_indices() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", ADVANCE_ONCE);
    let out = firstcut(&["detect", "--input", path.to_str().unwrap(), "--algo", "opt"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text,
        "cut 2 1\nstate 1 2 2 0\nstate 2 1 1 1\n"
    );
}

#[test]
fn detect_reports_no_cut_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", NOCUT_PAIR);
    let out = firstcut(&["detect", "--input", path.to_str().unwrap(), "--algo", "jls"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no-cut\n");
}

#[test]
fn detect_missing_file_exits_two() {
    let out = firstcut(&["detect", "--input", "/nonexistent.trace", "--algo", "opt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn detect_output_is_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", ADVANCE_ONCE);
    let base = firstcut(&["detect", "--input", path.to_str().unwrap(), "--algo", "opt"]);
    for threads in ["1", "2", "8"] {
        let out = firstcut(&[
            "detect",
            "--input",
            path.to_str().unwrap(),
            "--algo",
            "opt",
            "--threads",
            threads,
        ]);
        assert_eq!(stdout(&out), stdout(&base), "threads {threads}");
        assert_eq!(out.status.code(), base.status.code());
    }
}

#[test]
fn detect_metrics_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", ADVANCE_ONCE);
    let out = firstcut(&[
        "detect",
        "--input",
        path.to_str().unwrap(),
        "--algo",
        "opt",
        "--metrics",
    ]);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("rounds 1"));
    assert!(err.contains("comparisons"));
    assert!(!stdout(&out).contains("rounds"));
}

#[test]
fn generate_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a.trace");
    let out2 = dir.path().join("b.trace");
    for out in [&out1, &out2] {
        let run = firstcut(&[
            "generate",
            "--processes",
            "4",
            "--states",
            "6",
            "--send-prob",
            "0.4",
            "--seed",
            "42",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(run.status.code(), Some(0));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b);

    let check = firstcut(&["validate", "--input", out1.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn generate_without_sends_yields_fixed_clocks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chains.trace");
    let run = firstcut(&[
        "generate",
        "--processes",
        "2",
        "--states",
        "2",
        "--send-prob",
        "0",
        "--seed",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let clocks: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.splitn(5, ' ').nth(4).unwrap())
        .collect();
    assert_eq!(clocks, vec!["1 0", "2 0", "0 1", "0 2"]);
}

#[test]
fn generate_rejects_bad_probability() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.trace");
    let run = firstcut(&[
        "generate",
        "--processes",
        "2",
        "--states",
        "2",
        "--send-prob",
        "1.5",
        "--seed",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn validate_flags_corrupted_clock() {
    let dir = tempfile::tempdir().unwrap();
    // Own component of (1,2) corrupted from 2 to 3.
    let corrupted = IMMEDIATE_CUT.replace("state 1 2 1 2 0", "state 1 2 1 3 0");
    let path = write_trace(&dir, "bad.trace", &corrupted);
    let out = firstcut(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("own clock entry"));
}

#[test]
fn validate_empty_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "empty.trace", "");
    let out = firstcut(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_one_csv_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", ADVANCE_ONCE);
    let out = firstcut(&[
        "bench",
        "--input",
        path.to_str().unwrap(),
        "--algo",
        "opt,jls",
        "--repeat",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "algo,n,m_total,outcome,rounds,comparisons,edges_relaxed,states_advanced,wall_nanos,repeat"
    );
    assert_eq!(lines.len(), 1 + 2 * 3);
    let outcomes: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap())
        .collect();
    assert!(outcomes.iter().all(|&o| o == "found"));
}

#[test]
fn bench_non_timing_columns_are_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_trace(&dir, "t.trace", ADVANCE_ONCE);
    let strip_timing = |text: String| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|l| {
                let mut cols: Vec<&str> = l.split(',').collect();
                cols[8] = "-";
                cols.join(",")
            })
            .collect()
    };
    let mut runs = Vec::new();
    for threads in ["1", "2", "8"] {
        let out = firstcut(&[
            "bench",
            "--input",
            path.to_str().unwrap(),
            "--algo",
            "seq,opt,jls",
            "--threads",
            threads,
        ]);
        assert_eq!(out.status.code(), Some(0));
        runs.push(strip_timing(stdout(&out)));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
}

#[test]
fn bench_generated_input_runs_brute_too() {
    let out = firstcut(&[
        "bench", "--gen", "--processes", "3", "--states", "4", "--seed", "7", "--algo",
        "opt,brute", "--repeat", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 2 * 2);
    // opt and brute agree on the outcome column.
    let opt_outcome = text
        .lines()
        .skip(1)
        .find(|l| l.starts_with("opt"))
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap();
    let brute_outcome = text
        .lines()
        .skip(1)
        .find(|l| l.starts_with("brute"))
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap();
    assert_eq!(opt_outcome, brute_outcome);
}

#[test]
fn bench_without_input_or_gen_exits_two() {
    let out = firstcut(&["bench", "--algo", "opt"]);
    assert_eq!(out.status.code(), Some(2));
}
