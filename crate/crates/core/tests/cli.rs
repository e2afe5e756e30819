use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn multilru(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multilru"))
        .args(args)
        .env("MULTILRU_OUT", out)
        .output()
        .expect("binary runs")
}

fn small_simulation(out: &Path) -> Output {
    multilru(
        &[
            "simulate",
            "--width",
            "6",
            "--height",
            "6",
            "--duration",
            "20000",
            "--catalogue-size",
            "500",
            "--k",
            "10",
            "--policies",
            "single-lru,multi-lru-one,multi-lru-all,lfu",
            "--sweep",
            "radius",
            "--values",
            "0.8,1.13",
            "--replications",
            "3",
            "--seed",
            "7",
        ],
        out,
    )
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(multilru(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(multilru(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn bad_arguments_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(multilru(&["frobnicate"], dir.path()).status.code(), Some(1));
    let zero_radius = multilru(&["coverage", "--rb", "0"], dir.path());
    assert_eq!(zero_radius.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&zero_radius.stderr).contains("radius"));
    assert_eq!(
        multilru(&["simulate", "--policies", "mru"], dir.path()).status.code(),
        Some(1)
    );
}

#[test]
fn coverage_writes_profile_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = multilru(&["coverage", "--rb", "0.8,1.13"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = fs::read_to_string(dir.path().join("coverage_summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);
    assert!(dir.path().join("coverage.csv").exists());
    assert!(dir.path().join("coverage.manifest.json").exists());
    assert!(String::from_utf8_lossy(&out.stdout).contains("rb=1.13"));
}

#[test]
fn simulation_is_byte_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(small_simulation(a.path()).status.success());
    assert!(small_simulation(b.path()).status.success());
    let csv_a = fs::read(a.path().join("simulation.csv")).unwrap();
    let csv_b = fs::read(b.path().join("simulation.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    assert_eq!(
        fs::read(a.path().join("simulation.json")).unwrap(),
        fs::read(b.path().join("simulation.json")).unwrap()
    );
    let text = String::from_utf8(csv_a).unwrap();
    assert!(text.starts_with("sweep_value,N_bs_mean,policy,p_hit_mean,ci95,n_replications,seed\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 4);
}

#[test]
fn analyze_bound_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = multilru(
        &[
            "analyze",
            "--policy",
            "bound",
            "--pmf",
            "0,1",
            "--k",
            "1",
            "--catalogue-size",
            "3",
            "--gamma",
            "1",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("analysis.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let p: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((p - 6.0 / 11.0).abs() < 1e-12, "{row}");
}

#[test]
fn compare_matches_grids_and_rejects_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    assert!(small_simulation(dir.path()).status.success());
    let analysis = dir.path().join("a");
    fs::create_dir(&analysis).unwrap();
    let out = multilru(
        &[
            "analyze",
            "--policy",
            "multi-one,multi-all",
            "--values",
            "0.8,1.13",
            "--k",
            "10",
            "--catalogue-size",
            "500",
        ],
        &analysis,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sim = dir.path().join("simulation.csv");
    let ana = analysis.join("analysis.csv");
    let ok = multilru(
        &[
            "compare",
            "--simulation",
            sim.to_str().unwrap(),
            "--analysis",
            ana.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(dir.path().join("comparison.csv").exists());

    let other = dir.path().join("b");
    fs::create_dir(&other).unwrap();
    multilru(
        &[
            "analyze",
            "--policy",
            "multi-one",
            "--values",
            "1.6",
            "--k",
            "10",
            "--catalogue-size",
            "500",
        ],
        &other,
    );
    let bad = multilru(
        &[
            "compare",
            "--simulation",
            sim.to_str().unwrap(),
            "--analysis",
            other.join("analysis.csv").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn missing_input_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = multilru(
        &[
            "compare",
            "--simulation",
            "/nonexistent.csv",
            "--analysis",
            "/nonexistent.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}
