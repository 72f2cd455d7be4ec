//! End-to-end checks of the `zecap` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zecap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zecap"))
        .args(args)
        .current_dir(dir)
        .env_remove("ZECAP_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn capacity_reports_kind_and_provenance() {
    let dir = TempDir::new().unwrap();
    let o = zecap(dir.path(), &["capacity", "--k1", "2", "--k2", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "exact");
    assert_eq!(v["value"], 0.5);

    let v = json(&zecap(dir.path(), &["capacity", "--k1", "4", "--k2", "9"]));
    assert_eq!(v["kind"], "bounds");
    assert!((v["lower"].as_f64().unwrap() - 0.694242).abs() < 1e-6);
    assert!((v["upper"].as_f64().unwrap() - 0.879146).abs() < 1e-6);
    assert!(v["provenance"].is_string());

    let o = zecap(dir.path(), &["capacity", "--k1", "0", "--k2", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn roots_and_bounds_tables() {
    let dir = TempDir::new().unwrap();
    let roots = stdout(&zecap(dir.path(), &["roots", "--from", "2", "--to", "4"]));
    let lines: Vec<&str> = roots.lines().collect();
    assert_eq!(lines[0], "k,lambda,log2_lambda,omega,log2_omega");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("3,1.61803398875,"));

    let table = stdout(&zecap(
        dir.path(),
        &["bounds-table", "--from", "3", "--to", "12"],
    ));
    let rows: Vec<Vec<f64>> = table
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(table.lines().next(), Some("k1,lower_bits,upper_bits"));
    assert_eq!(rows.len(), 10);
    for w in rows.windows(2) {
        assert!((w[1][1] - w[0][2]).abs() < 1e-9);
        assert!(w[1][2] - w[1][1] < w[0][2] - w[0][1]);
    }
}

#[test]
fn count_csv_rows() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&zecap(
        dir.path(),
        &["count", "forbidden-run", "--L", "3", "--n-max", "10"],
    ));
    assert!(out.starts_with("n,count,rate_bits\n"));
    assert!(out.ends_with("10,178,0.747573343097\n"));
    let out = stdout(&zecap(
        dir.path(),
        &["count", "no-run-break", "--k2", "4", "--n-max", "5"],
    ));
    assert_eq!(out.lines().count(), 6);
    let o = zecap(
        dir.path(),
        &["count", "no-run-break", "--k2", "2", "--n-max", "5"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph_adjacency_and_cap_override() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&zecap(
        dir.path(),
        &["graph", "--k1", "2", "--k2", "1", "--n", "2"],
    ));
    assert_eq!(out, "0: 1\n1: 0\n2: 3\n3: 2\n");

    let o = zecap(
        dir.path(),
        &["graph", "--k1", "1", "--k2", "1", "--n", "15"],
    );
    assert_eq!(o.status.code(), Some(4));

    let o = Command::new(env!("CARGO_BIN_EXE_zecap"))
        .args(["graph", "--k1", "1", "--k2", "1", "--n", "15"])
        .env("ZECAP_MAX_N", "15")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 << 15);
}

#[test]
fn search_writes_a_verifiable_witness() {
    let dir = TempDir::new().unwrap();
    let o = zecap(
        dir.path(),
        &["search", "--k1", "2", "--k2", "1", "--n", "6"],
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["size"], 8);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["rate"], 0.5);
    let file = v["witness_file"].as_str().unwrap();
    assert!(dir.path().join(file).exists());

    let o = zecap(dir.path(), &["verify", "--code", file]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["valid"], true);
}

#[test]
fn construct_verify_simulate_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = zecap(
        dir.path(),
        &["construct", "pairwise", "--n", "6", "--out", "pw.txt"],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("pw.txt")).unwrap();
    assert!(text.starts_with("# zecap code n=6 k1=2 k2=1\n"));
    assert_eq!(text.lines().count(), 9);

    assert_eq!(
        zecap(dir.path(), &["verify", "--code", "pw.txt"])
            .status
            .code(),
        Some(0)
    );
    // the same words collide once the output memory is 2
    let o = zecap(
        dir.path(),
        &["verify", "--code", "pw.txt", "--k1", "1", "--k2", "2"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["valid"], false);

    let sim = |seed: &str| {
        zecap(
            dir.path(),
            &[
                "simulate", "--code", "pw.txt", "--trials", "500", "--seed", seed,
            ],
        )
    };
    let a = sim("11");
    assert!(a.status.success());
    assert_eq!(json(&a)["failures"], 0);
    assert_eq!(a.stdout, sim("11").stdout);

    let o = zecap(
        dir.path(),
        &[
            "simulate", "--code", "pw.txt", "--k1", "1", "--k2", "2", "--trials", "50",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = zecap(
        dir.path(),
        &[
            "simulate", "--code", "pw.txt", "--k1", "1", "--k2", "2", "--trials", "200", "--force",
        ],
    );
    assert!(o.status.success());
    assert!(json(&o)["failures"].as_u64().unwrap() > 0);

    let o = zecap(
        dir.path(),
        &["construct", "forbidden-run", "--n", "5", "--L", "2"],
    );
    assert_eq!(stdout(&o), "# zecap code n=5 k1=1 k2=3\n01010\n10101\n");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("bad.txt"),
        "# zecap code n=3 k1=1 k2=1\n010\n01\n",
    )
    .unwrap();
    let o = zecap(dir.path(), &["verify", "--code", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        zecap(dir.path(), &["verify", "--code", "missing.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(zecap(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        zecap(dir.path(), &["--threads", "0", "roots"])
            .status
            .code(),
        Some(2)
    );
}
