//! Golden-file and exit-code tests for the `qprop` binary.
//!
//! Set `QPROP_BLESS=1` to rewrite the files under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qprop() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qprop"));
    cmd.env_remove("QPROP_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    qprop().args(args).output().expect("spawn qprop")
}

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str, args: &[&str]) -> String {
    let first = run(args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let second = run(args);
    assert_eq!(
        first.stdout, second.stdout,
        "non-deterministic output for {name}"
    );

    let path = manifest("tests/golden").join(name);
    let got = stdout(&first);
    if std::env::var_os("QPROP_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "golden mismatch for {name}");
    got
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = parse_csv(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

const PI_6: &str = "0.5235987755982988";
const PI_4: &str = "0.7853981633974483";

#[test]
fn order_effect_table() {
    let out = golden(
        "order_effect.csv",
        &["order-effect", "--theta", PI_6, "--phi", PI_4],
    );
    let (_, rows) = parse_csv(&out);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let joint: Vec<f64> = row[1..5].iter().map(|x| x.parse().unwrap()).collect();
        assert!(joint.iter().all(|p| (0.0..=1.0).contains(p)));
        assert!((joint.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    }
    assert!((column(&out, "A+B+")[0] - 0.375).abs() <= 1e-11);
}

#[test]
fn reversed_order_with_aligned_frameworks() {
    let out = golden(
        "order_effect_ba.csv",
        &[
            "order-effect",
            "--theta",
            "0.6",
            "--phi",
            "0.6",
            "--order",
            "ba",
        ],
    );
    assert_eq!(column(&out, "B_yes"), vec![1.0]);
}

#[test]
fn degrees_flag_matches_radians() {
    let rad = run(&["order-effect", "--theta", PI_6, "--phi", PI_4]);
    let deg = run(&["order-effect", "--theta", "30", "--phi", "45", "--degrees"]);
    assert_eq!(stdout(&rad), stdout(&deg));
}

#[test]
fn missing_flag_is_usage_error() {
    let o = run(&["order-effect", "--phi", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--theta"));
    assert!(stderr(&o).contains("Usage"));
    assert!(o.stdout.is_empty());
}

#[test]
fn interference_with_sampling() {
    let out = golden(
        "interference.json",
        &[
            "interference",
            "--theta",
            PI_4,
            "--phi",
            PI_4,
            "--trials",
            "100000",
            "--seed",
            "42",
            "--output",
            "json",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["interference"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    let (p, got) = (
        v["measured_b_yes"].as_f64().unwrap(),
        v["sampled_b_yes"].as_f64().unwrap(),
    );
    assert!((got - p).abs() <= 3.0 * (p * (1.0 - p) / 1e5).sqrt());
}

#[test]
fn seed_from_environment() {
    let args = [
        "sample",
        "--buyer-price",
        "1.05",
        "--buyer-sigma",
        "0.1",
        "--seller-price",
        "0.95",
        "--seller-sigma",
        "0.1",
        "--n",
        "5",
    ];
    let missing = run(&args);
    assert_eq!(missing.status.code(), Some(2));

    let env = qprop().args(args).env("QPROP_SEED", "9").output().unwrap();
    let flag = run(&[&args[..], &["--seed", "9"]].concat());
    assert_eq!(env.stdout, flag.stdout);
    let overridden = qprop()
        .args(args)
        .args(["--seed", "10"])
        .env("QPROP_SEED", "9")
        .output()
        .unwrap();
    assert_ne!(env.stdout, overridden.stdout);
}

#[test]
fn equivalence_report() {
    let out = golden(
        "equivalence.csv",
        &["equivalence", "--trials", "25", "--seed", "7"],
    );
    assert_eq!(parse_csv(&out).1.len(), 25);
    assert!(column(&out, "max_abs_deviation")
        .iter()
        .all(|d| *d <= 1e-12));

    let big = run(&[
        "equivalence",
        "--trials",
        "1000",
        "--seed",
        "42",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(big.status.code(), Some(0));
    assert!(stderr(&big).contains("max deviation"));
}

#[test]
fn equivalence_zero_tolerance_fails() {
    let o = run(&["equivalence", "--trials", "3", "--seed", "7", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("exact equality is not required"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn reversal_decisions() {
    golden("reversal.csv", &["reversal", "--x1", "1", "--x2", "4"]);
    for (x2, switches) in [("2", "false"), ("3", "false"), ("3.001", "true")] {
        let o = run(&["reversal", "--x1", "1", "--x2", x2]);
        assert!(stdout(&o).trim_end().ends_with(switches), "{x2}");
    }
    assert_eq!(
        run(&["reversal", "--x1", "0", "--x2", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn single_curve_force() {
    let out = golden(
        "force.csv",
        &["force", "--price", "1", "--sigma", "0.25", "--points", "21"],
    );
    let xs = column(&out, "x");
    let fs = column(&out, "force");
    // mean at log-price 0 sits in the middle of the default grid
    assert_eq!(xs[10], 0.0);
    assert_eq!(fs[10], 0.0);
    let k = 0.5 / (0.25 * 0.25);
    for (x, f) in xs.iter().zip(&fs) {
        assert!((f + k * x).abs() <= 1e-9 * k.max(1.0), "{x} {f}");
    }
}

#[test]
fn invalid_grid_and_curve() {
    assert_eq!(
        run(&["force", "--price", "1", "--sigma", "0.25", "--points", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["force", "--price", "1", "--sigma", "-0.25"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["force", "--price", "-1", "--sigma", "0.25"])
            .status
            .code(),
        Some(2)
    );
    let o = run(&[
        "joint",
        "--buyer-price",
        "1.05",
        "--buyer-sigma",
        "0",
        "--seller-price",
        "0.95",
        "--seller-sigma",
        "0.1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oscillator_parameters() {
    let out = golden("oscillator.csv", &["oscillator", "--sigma", "0.1"]);
    assert_eq!(column(&out, "mass"), vec![50.0]);
    let out = stdout(&run(&["oscillator", "--sigma", "1"]));
    assert_eq!(column(&out, "mass"), vec![0.5]);
    assert_eq!(column(&out, "gamma"), vec![0.5]);
}

#[test]
fn joint_curves_peak_at_mid_price() {
    let out = golden(
        "joint.csv",
        &[
            "joint",
            "--buyer-price",
            "1.05",
            "--buyer-sigma",
            "0.1",
            "--seller-price",
            "0.95",
            "--seller-sigma",
            "0.1",
            "--points",
            "501",
        ],
    );
    let xs = column(&out, "x");
    let joint = column(&out, "joint_density");
    assert_eq!(xs.len(), 501);
    let peak = joint
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    let mid = (1.05f64.ln() + 0.95f64.ln()) / 2.0;
    let step = xs[1] - xs[0];
    assert!(
        (xs[peak] - mid).abs() <= step / 2.0,
        "{} vs {mid}",
        xs[peak]
    );
    let (b, s, j) = (
        column(&out, "buyer_force"),
        column(&out, "seller_force"),
        column(&out, "joint_force"),
    );
    for i in 0..xs.len() {
        assert!((b[i] + s[i] - j[i]).abs() <= 1e-9 * j[i].abs().max(1.0));
    }
}

#[test]
fn fixed_price_joint() {
    let out = golden(
        "joint_fixed.csv",
        &[
            "joint",
            "--buyer-price",
            "1.05",
            "--buyer-sigma",
            "0.1",
            "--fixed-price",
            "1.0",
            "--points",
            "9",
        ],
    );
    let (_, rows) = parse_csv(&out);
    assert!(rows.iter().all(|r| r[3].is_empty() && r[4].is_empty()));
    let o = run(&[
        "sample",
        "--buyer-price",
        "1.05",
        "--buyer-sigma",
        "0.1",
        "--fixed-price",
        "1.2",
        "--n",
        "4",
        "--seed",
        "1",
    ]);
    assert!(column(&stdout(&o), "price").iter().all(|p| *p == 1.2));
}

#[test]
fn work_between_prices() {
    let out = golden(
        "work.csv",
        &[
            "work",
            "--price",
            "1",
            "--sigma",
            "1",
            "--from-price",
            "1",
            "--to-price",
            "2.718281828459045",
            "--gamma",
            "1",
        ],
    );
    assert_eq!(column(&out, "work"), vec![-0.5]);
}

#[test]
fn sampled_prices() {
    golden(
        "sample.csv",
        &[
            "sample",
            "--buyer-price",
            "1.05",
            "--buyer-sigma",
            "0.1",
            "--seller-price",
            "0.95",
            "--seller-sigma",
            "0.1",
            "--n",
            "20",
            "--seed",
            "7",
        ],
    );
}

fn config_path(name: &str) -> String {
    manifest("configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn run_reversal_config() {
    let o = run(&["run", &config_path("reversal.toml")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["switches"], serde_json::Value::Bool(true));
    assert_eq!(v["config"]["model"], "reversal");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn run_is_reproducible() {
    for name in ["sample.toml", "equivalence.toml"] {
        let a = run(&["run", &config_path(name)]);
        let b = run(&["run", &config_path(name)]);
        assert_eq!(a.status.code(), Some(0));
        let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
        assert_eq!(
            serde_json::to_string(&va["results"]).unwrap(),
            serde_json::to_string(&vb["results"]).unwrap()
        );
        assert!(va["seed"].is_u64());
    }
}

#[test]
fn run_csv_configs_match_subcommands() {
    let from_config = run(&["run", &config_path("order_effect.toml")]);
    let direct = run(&["order-effect", "--theta", "30", "--phi", "45", "--degrees"]);
    assert_eq!(from_config.stdout, direct.stdout);
    let joint = run(&["run", &config_path("joint_curves.toml")]);
    assert_eq!(joint.status.code(), Some(0));
    assert_eq!(
        stdout(&joint),
        std::fs::read_to_string(manifest("tests/golden/joint.csv")).unwrap()
    );
}

#[test]
fn run_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("record.json");
    let o = run(&[
        "run",
        &config_path("reversal.toml"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["results"]["ratio"], 4.0);
}

#[test]
fn run_rejects_unknown_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        "model = \"reversal\"\n\n[reversal]\nx1 = 1.0\nx2 = 4.0\ntemperature = 300.0\n",
    )
    .unwrap();
    let o = run(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("temperature") && err.contains("line 6"),
        "{err}"
    );
    assert_eq!(
        run(&["run", "/nonexistent/config.toml"]).status.code(),
        Some(2)
    );
}
