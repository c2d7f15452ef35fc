//! End-to-end tests of the command-line interface: report determinism, exit
//! codes, and the documented file formats.

use std::process::{Command, Output};

fn redblue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redblue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = redblue(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn max_reports_rbrb_value() {
    let out = stdout(&["max", "--pattern", "rbrb_c4", "--n", "6"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["max_value"], 18);
    assert_eq!(v["extremal"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["max", "--pattern", "rrbb_c4", "--n", "5"],
        vec![
            "max",
            "--pattern",
            "rbrb_c4",
            "--n",
            "9",
            "--local",
            "--seed",
            "7",
            "--restarts",
            "3",
        ],
        vec![
            "count",
            "--construct",
            "quasirandom:n=30,sigma=0.6,seed=3",
            "--pattern",
            "rrrb_c4",
        ],
        vec![
            "profile",
            "--n",
            "40",
            "--sigma-min",
            "0.3",
            "--sigma-max",
            "0.8",
            "--step",
            "0.1",
            "--seed",
            "5",
        ],
        vec!["relax", "gapgrid", "--steps", "10"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "non-deterministic output for {args:?}");
        assert!(!a.is_empty());
    }
}

#[test]
fn construct_count_round_trip() {
    let dir = tempdir();
    let path = dir.join("g.txt");
    let out = redblue(&[
        "construct",
        "--kind",
        "partitioned",
        "--n",
        "6",
        "--a",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("6\n"));

    let counted = stdout(&[
        "count",
        "--input",
        path.to_str().unwrap(),
        "--pattern",
        "rbrb_c4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&counted).unwrap();
    assert_eq!(v["count"], "18");

    let cycles = stdout(&[
        "count",
        "--input",
        path.to_str().unwrap(),
        "--cycle-len",
        "4",
    ]);
    let v: serde_json::Value = serde_json::from_str(&cycles).unwrap();
    assert_eq!(v["count"], "18");
}

#[test]
fn construct_turan_matches_formula_count() {
    let out = stdout(&["construct", "--kind", "turan", "--n", "7", "--parts", "3"]);
    let g: redblue::ColouredCompleteGraph = out.trim().parse().unwrap();
    assert_eq!(redblue::counting::count_ccextt_codegree(&g), 38);
}

#[test]
fn formula_subcommand() {
    let out = stdout(&["formula", "--name", "rrrb_profile", "--sigma", "0.75"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], "27/512");
    let out = stdout(&["formula", "--name", "rbrb_max", "--n", "8"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["float"], 72.0);
    let names = stdout(&["formula", "--list"]);
    assert!(names.lines().count() >= 10);
}

#[test]
fn relax_subcommands() {
    let dir = tempdir();
    let trace = dir.join("trace.csv");
    let out = stdout(&[
        "relax",
        "equalize",
        "--construct",
        "partitioned:n=10,a=5,colour=R",
        "--gamma",
        "1/10",
        "--output",
        trace.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["steps"].as_u64().unwrap() > 0);
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("step,Sigma,f\n"));
    assert_eq!(csv.lines().count() as u64, v["steps"].as_u64().unwrap() + 2);

    let vec_json = stdout(&[
        "relax",
        "vector",
        "--construct",
        "quasirandom:n=12,sigma=0.5,seed=1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&vec_json).unwrap();
    assert_eq!(v["d"].as_array().unwrap().len(), 12);
    assert_eq!(v["z"].as_array().unwrap().len(), 66);
}

#[test]
fn verify_single_criterion_passes() {
    let out = redblue(&["verify", "--criterion", "9"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]"));
    assert!(text.contains("canonical_score_pin"));
}

#[test]
fn exit_codes() {
    // configuration errors: 2
    assert_eq!(
        redblue(&["formula", "--name", "mystery", "--n", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        redblue(&["count", "--construct", "bogus:n=4", "--pattern", "rbrb_c4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        redblue(&["max", "--pattern", "not_a_pattern", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    // cap exceeded: 4
    assert_eq!(
        redblue(&["max", "--pattern", "rbrb_c4", "--n", "12"])
            .status
            .code(),
        Some(4)
    );
    // malformed graph file: 2
    let dir = tempdir();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "4\nRRB").unwrap();
    assert_eq!(
        redblue(&[
            "count",
            "--input",
            bad.to_str().unwrap(),
            "--pattern",
            "rbrb_c4"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn profile_csv_columns() {
    let csv = stdout(&[
        "profile",
        "--n",
        "30",
        "--sigma-min",
        "0.7",
        "--sigma-max",
        "0.7",
        "--step",
        "0.1",
        "--seed",
        "2",
    ]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "sigma,actual_sigma,rrrb_count,profile_bound,rand_q,count_over_bound"
    );
    let row = lines.next().unwrap();
    assert_eq!(row.split(',').count(), 6);
}

fn tempdir() -> std::path::PathBuf {
    let base = std::env::temp_dir().join(format!("redblue-cli-{}", std::process::id()));
    std::fs::create_dir_all(&base).unwrap();
    base
}
