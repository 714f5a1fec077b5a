use std::path::{Path, PathBuf};
use std::process::Command;

use mthorder::harness::{catalog, render_svg, ExperimentConfig, Plot};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mthorder"))
}

fn experiments_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../experiments")
}

#[test]
fn list_prints_catalog() {
    let out = bin().args(["run", "--list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for c in catalog() {
        assert!(text.contains(&c.name), "{} missing from --list", c.name);
    }
}

#[test]
fn shipped_configs_validate_and_match_catalog() {
    let mut seen = 0;
    for entry in std::fs::read_dir(experiments_dir()).unwrap() {
        let path = entry.unwrap().path();
        let config = ExperimentConfig::load(&path).unwrap();
        if let Some(c) = catalog().into_iter().find(|c| c.name == config.name) {
            assert_eq!(c, config, "{} is out of date", path.display());
            seen += 1;
        }
    }
    assert_eq!(seen, catalog().len());
}

#[test]
fn equality_example_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["run"])
        .arg(experiments_dir().join("zhang_simplex.json"))
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let verdicts: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verdicts.json")).unwrap()).unwrap();
    for v in verdicts["jobs"][0]["verdicts"].as_array().unwrap() {
        assert_eq!(v["status"], "holds_with_equality");
    }
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn same_seed_gives_identical_verdicts() {
    let config = experiments_dir().join("chain_gaussian.json");
    let runs: Vec<String> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let status = bin().arg("run").arg(&config).args(["--seed", "42", "--out"]).arg(dir.path()).status().unwrap();
            assert_eq!(status.code(), Some(0));
            std::fs::read_to_string(dir.path().join("verdicts.json")).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn schema_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"name": "x", "experiment": "chain", "p_grid": [1.0], "functions": [], "bogus": 1}"#).unwrap();
    let out = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));

    std::fs::write(&path, r#"{"name": "x", "experiment": "chain", "p_grid": [-1.5], "functions": [{"profile": "gaussian", "body": {"kind": "cube", "dim": 1}}]}"#).unwrap();
    assert_eq!(bin().arg("run").arg(&path).output().unwrap().status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_three_and_names_job() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unbounded.json");
    // The exponential profile has unbounded support, so the support identity
    // has nothing to compare against.
    std::fs::write(
        &path,
        r#"{"name": "unbounded_support", "experiment": "support_identity", "functions": [{"profile": "exponential", "body": {"kind": "cube", "dim": 1}}], "directions": 4}"#,
    )
    .unwrap();
    let out = bin().arg("run").arg(&path).arg("--out").arg(dir.path().join("out")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unbounded_support"));
}

#[test]
fn violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tight.json");
    // With 200 samples the Monte Carlo mass misses the 1% band.
    std::fs::write(
        &path,
        r#"{"name": "tight", "experiment": "covariogram_mass", "bodies": [{"kind": "cube", "dim": 2}], "samples": 200}"#,
    )
    .unwrap();
    let out = bin().arg("run").arg(&path).arg("--out").arg(dir.path().join("out")).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn svg_is_xml_with_one_polyline_per_series() {
    let mut plot = Plot::new("p", "a <title> & more", "x", "y");
    plot.series("first", vec![(0.0, 1.0), (1.0, 2.0), (2.0, f64::NAN)]);
    plot.series("second", vec![(0.0, 0.0), (1.0, 0.5)]);
    plot.series("flat", vec![(0.0, 3.0), (1.0, 3.0)]);
    let svg = render_svg(&plot);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let polylines = doc.descendants().filter(|n| n.has_tag_name("polyline")).count();
    assert_eq!(polylines, 3);
}

#[test]
fn written_plots_parse() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .arg("run")
        .arg(experiments_dir().join("chain_gaussian.json"))
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let plots: Vec<_> = std::fs::read_dir(dir.path().join("plots")).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!plots.is_empty());
    for p in plots {
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert!(doc.descendants().any(|n| n.has_tag_name("polyline")));
    }
}
