use std::fs;
use std::process::{Command, Output};

use graphtest::experiment::CSV_HEADER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphtest"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_then_test_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    let out = run(&[
        "gen",
        "--model",
        "planted_coloring",
        "--n",
        "40",
        "--k",
        "3",
        "--p",
        "0.5",
        "--seed",
        "5",
        "--out",
        p,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&path).unwrap();
    let header: Vec<usize> = text
        .lines()
        .next()
        .unwrap()
        .split(' ')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(header[0], 40);
    assert_eq!(text.lines().count(), header[1] + 1);

    let out = run(&[
        "test",
        "--input",
        p,
        "--property",
        "k_colorable",
        "--k",
        "3",
        "--eps",
        "0.2",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["property"], "k_colorable");
    assert_eq!(record["accepted"], true);
    assert_eq!(record["s_used"], 40);
}

#[test]
fn trials_csv_and_json() {
    let base = [
        "--model", "complete", "--n", "30", "--rho", "0.5", "--eps", "0.1", "--trials", "6",
    ];
    let out = run(&[&["trials"][..], &base[..]].concat());
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("indep_set,30,0.5,0.1,4.0,0.0,30,6,0,0.0,"));
    assert_eq!(lines.len(), 2);

    let out = run(&[&["trials", "--format", "json"][..], &base[..]].concat());
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn curve_rows_per_sweep_value() {
    let out = run(&[
        "curve",
        "--model",
        "gnp",
        "--n",
        "50",
        "--p",
        "0.5",
        "--rho",
        "0.2",
        "--eps",
        "0.1",
        "--trials",
        "4",
        "--s-values",
        "5,10,80",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2].split(',').nth(6), Some("50"));

    let out = run(&[
        "curve",
        "--model",
        "gnp",
        "--n",
        "50",
        "--p",
        "0.5",
        "--rho",
        "0.2",
        "--eps",
        "0.1",
        "--trials",
        "4",
        "--c-values",
        "0.5,1",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&out).lines().count(), 8);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"model":"empty","n":20,"rho":0.5,"eps":0.1,"trials":3}"#,
    )
    .unwrap();
    let out = run(&["trials", "--config", cfg.to_str().unwrap(), "--trials", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[7..9], ["5", "5"]);
}

#[test]
fn exit_codes() {
    // Unknown flag and bad values: invalid arguments.
    assert_eq!(run(&["trials", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["trials", "--model", "complete", "--n", "5", "--rho", "0.5", "--eps", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["trials", "--model", "complete", "--n", "5", "--rho", "0.5"])
            .status
            .code(),
        Some(2)
    );
    // Missing file and an oracle beyond its cap: precondition failures.
    assert_eq!(
        run(&[
            "test",
            "--input",
            "/nonexistent/g.txt",
            "--rho",
            "0.5",
            "--eps",
            "0.1"
        ])
        .status
        .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.txt");
    let p = path.to_str().unwrap();
    assert!(
        run(&["gen", "--model", "gnp", "--n", "40", "--p", "0.5", "--out", p])
            .status
            .success()
    );
    assert_eq!(
        run(&["oracle", "distance", "--input", p, "--rho", "0.5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn oracle_queries() {
    let out = run(&[
        "oracle",
        "tail",
        "--population",
        "3",
        "--marked",
        "1",
        "--draws",
        "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["median_at_ceil_mean"], false);
    assert!((v["exact_tail"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    fs::write(&path, "3 2\n0 1\n1 2\n").unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["oracle", "trace", "--input", p, "--set", "0,2"]);
    assert_eq!(stdout(&out), "1 0 1 2\n2 2 2 2\n\n");

    let out = run(&[
        "oracle",
        "distance",
        "--input",
        p,
        "--property",
        "k_colorable",
        "--k",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["edit_count"], 2);
}
