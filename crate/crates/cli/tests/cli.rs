use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn repo(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn data() -> PathBuf {
    repo("data/pendigits/pendigits.csv")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inkbasis"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> Output {
    run_in(&std::env::temp_dir(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SUBCOMMANDS: [&str; 7] = [
    "approximate",
    "norms",
    "bench",
    "train",
    "eval",
    "condition",
    "serve",
];

#[test]
fn every_subcommand_has_help() {
    for sub in SUBCOMMANDS {
        let o = run(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage: inkbasis"), "{sub}");
    }
}

#[test]
fn usage_errors_exit_one_with_help() {
    let d = data();
    let d = d.to_str().unwrap();
    for args in [
        vec!["frobnicate"],
        vec!["norms"],
        vec!["norms", "--data", d, "--degrees", "5..25"],
        vec!["norms", "--data", d, "--degrees", "9..3"],
        vec!["eval", "--data", d, "--basis", "hermite"],
        vec!["condition", "--coeffs", "1,x"],
        vec!["train", "--data", d, "--out", "m.model", "--c", "-1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("error"), "{args:?}: {err}");
    }
    let o = run(&[
        "eval",
        "--data",
        data().to_str().unwrap(),
        "--basis",
        "hermite",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage: eval"));
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1,2,3\n").unwrap();
    let o = run(&["norms", "--data", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = run(&["norms", "--data", "/nonexistent/pendigits.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let ink = dir.path().join("empty.json");
    std::fs::write(&ink, r#"{"symbols": [{"strokes": []}]}"#).unwrap();
    let o = run(&["approximate", "--input", ink.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least one stroke"));
}

#[test]
fn lenient_mode_skips_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("mixed.csv");
    let text = std::fs::read_to_string(data()).unwrap();
    let mut lines: Vec<&str> = text.lines().take(30).collect();
    lines.insert(3, "1,2,3");
    std::fs::write(&f, lines.join("\n")).unwrap();
    let o = run(&[
        "norms",
        "--data",
        f.to_str().unwrap(),
        "--degrees",
        "5",
        "--lenient",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped line 4"));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",30"));
}

#[test]
fn norms_cover_every_basis_and_degree() {
    let o = run(&[
        "norms",
        "--data",
        data().to_str().unwrap(),
        "--per-class",
        "3",
        "--degrees",
        "5..20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "basis,degree,mean_coeff_norm,n_samples");
    assert_eq!(lines.len(), 1 + 4 * 16);
    assert!(lines[1].starts_with("legendre,5,"));
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",30")));
}

#[test]
fn golden_overlay_is_reproduced() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("zero.svg");
    let fixture = repo("fixtures/ink/zero.json");
    let args = [
        "approximate",
        "--input",
        fixture.to_str().unwrap(),
        "--basis",
        "all",
        "--degree",
        "15",
        "--svg",
    ];
    for _ in 0..2 {
        let o = run(&[&args[..], &[svg.to_str().unwrap()]].concat());
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(
            std::fs::read(&svg).unwrap(),
            std::fs::read(repo("fixtures/golden/zero-d15.svg")).unwrap()
        );
    }
}

#[test]
fn approximate_writes_coefficients() {
    let fixture = repo("fixtures/ink/line.json");
    let o = run(&[
        "approximate",
        "--input",
        fixture.to_str().unwrap(),
        "--basis",
        "legendre",
        "--degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["basis", "degree", "mu", "index", "x", "y"]);
    assert_eq!(rows.len(), 4);
    let x1: f64 = rows[2][4].parse().unwrap();
    assert!((x1 - 1.0).abs() < 1e-12);
}

#[test]
fn condition_table_matches_closed_form() {
    // p = 1 - s in the Legendre basis: absolute 1 + |s|, relative (1 + |s|) / |1 - s|.
    let o = run(&[
        "condition",
        "--basis",
        "legendre",
        "--coeffs",
        "1,-1",
        "--grid",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "s,value,absolute,relative\n-1,2,2,1\n-0.5,1.5,1.5,1\n0,1,1,1\n0.5,0.5,1.5,3\n1,0,2,inf\n"
    );
}

#[test]
fn train_writes_only_the_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "train",
            "--data",
            data().to_str().unwrap(),
            "--per-class",
            "20",
            "--degree",
            "6",
            "--seed",
            "3",
            "--out",
            "small.model",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let entries: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(entries, ["small.model"]);
    let model = inkbasis::classify::load_model(dir.path().join("small.model")).unwrap();
    assert_eq!(model.classifiers.len(), 45);
    assert_eq!(model.meta.seed, 3);
    assert_eq!(model.meta.features.degree, 6);
}

#[test]
fn eval_reports_one_row_per_degree() {
    let o = run(&[
        "eval",
        "--data",
        data().to_str().unwrap(),
        "--per-class",
        "30",
        "--splits",
        "3",
        "--degrees",
        "4,8",
        "--basis",
        "legendre,chebyshev-sobolev",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "basis,degree,min,mean,max,n_splits");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        let (min, mean, max): (f64, f64, f64) = (
            f[2].parse().unwrap(),
            f[3].parse().unwrap(),
            f[4].parse().unwrap(),
        );
        assert!(min <= mean && mean <= max && max <= 1.0, "{l}");
        assert_eq!(f[5], "3");
    }
}

#[test]
fn bench_reports_positive_times() {
    let o = run(&[
        "bench",
        "--data",
        data().to_str().unwrap(),
        "--per-class",
        "2",
        "--degrees",
        "5,10",
        "--repetitions",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "basis,degree,mean_seconds_per_sample,n_samples,repetitions"
    );
    assert_eq!(lines.len(), 9);
    for l in &lines[1..] {
        let t: f64 = l.split(',').nth(2).unwrap().parse().unwrap();
        assert!(t > 0.0);
    }
}
