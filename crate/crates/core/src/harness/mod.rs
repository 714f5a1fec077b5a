//! Experiment configs, the built-in catalog, and the verdict, table and plot
//! outputs written by the `mthorder` binary.

mod catalog;
mod config;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::inequalities::Verdict;

pub use catalog::{catalog, run_job};
pub use config::{CaseSpec, ExperimentConfig, ExperimentKind};
pub use svg::render_svg;

/// Interval check `lower ≤ value ≤ upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub passed: bool,
}

impl Check {
    pub fn between(name: impl Into<String>, value: f64, lower: Option<f64>, upper: Option<f64>) -> Self {
        let passed = !value.is_nan() && lower.is_none_or(|l| value >= l) && upper.is_none_or(|u| value <= u);
        Self { name: name.into(), value, lower, upper, passed }
    }

    /// `|value − target| ≤ rel·|target|`.
    pub fn relative(name: impl Into<String>, value: f64, target: f64, rel: f64) -> Self {
        let slack = rel * target.abs();
        Self::between(name, value, Some(target - slack), Some(target + slack))
    }

    pub fn absolute(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::between(name, value, Some(target - tol), Some(target + tol))
    }

    pub fn at_most(name: impl Into<String>, value: f64, upper: f64) -> Self {
        Self::between(name, value, None, Some(upper))
    }

    pub fn at_least(name: impl Into<String>, value: f64, lower: f64) -> Self {
        Self::between(name, value, Some(lower), None)
    }

    pub fn holds(name: impl Into<String>, condition: bool) -> Self {
        Self::between(name, if condition { 1.0 } else { 0.0 }, Some(1.0), None)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub name: String,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl Plot {
    pub fn new(name: &str, title: &str, x_label: &str, y_label: &str) -> Self {
        Self {
            name: name.into(),
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn series(&mut self, label: impl Into<String>, points: Vec<(f64, f64)>) {
        self.series.push(Series { label: label.into(), points });
    }
}

/// Everything one experiment produced.
#[derive(Debug, Clone, PartialEq)]
pub struct JobReport {
    pub name: String,
    pub experiment: ExperimentKind,
    pub verdicts: Vec<Verdict>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    pub plots: Vec<Plot>,
}

impl JobReport {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self {
            name: config.name.clone(),
            experiment: config.experiment,
            verdicts: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            plots: Vec::new(),
        }
    }

    /// No verdict violated beyond 3σ and every check inside its interval.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| !v.is_violated()) && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let v = self.verdicts.iter().filter(|v| v.is_violated()).map(|v| format!("verdict {}", v.name));
        let c = self.checks.iter().filter(|c| !c.passed).map(|c| format!("check {} = {:e}", c.name, c.value));
        v.chain(c).collect()
    }

    pub fn summary(&self) -> Value {
        json!({
            "name": self.name,
            "experiment": self.experiment,
            "passed": self.passed(),
            "verdicts": self.verdicts,
            "checks": self.checks,
        })
    }
}

/// A job that could not produce a report.
#[derive(Debug)]
pub struct JobFailure {
    pub job: String,
    pub error: Error,
}

/// Result of a batch of jobs; reports keep the input order.
#[derive(Debug)]
pub struct RunOutcome {
    pub reports: Vec<JobReport>,
    pub failures: Vec<JobFailure>,
    pub runtimes: Vec<(String, f64)>,
}

impl RunOutcome {
    /// 0 when every job ran and passed, 3 when a job failed numerically,
    /// 1 when a verdict or check failed.
    pub fn exit_code(&self) -> i32 {
        if !self.failures.is_empty() {
            3
        } else if self.reports.iter().any(|r| !r.passed()) {
            1
        } else {
            0
        }
    }
}

/// Runs the jobs on the current rayon pool.
pub fn run_all(configs: &[ExperimentConfig]) -> RunOutcome {
    let results: Vec<(String, Result<JobReport>, f64)> = configs
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let r = run_job(c);
            (c.name.clone(), r, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut outcome = RunOutcome { reports: Vec::new(), failures: Vec::new(), runtimes: Vec::new() };
    for (job, r, secs) in results {
        outcome.runtimes.push((job.clone(), secs));
        match r {
            Ok(report) => outcome.reports.push(report),
            Err(error) => outcome.failures.push(JobFailure { job, error }),
        }
    }
    outcome
}

fn file_stem(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Writes `verdicts.json`, `tables/*.csv`, `plots/*.svg` and `manifest.json`
/// under `out`. Only the manifest carries timings.
pub fn write_outputs(out: &Path, configs: &[ExperimentConfig], outcome: &RunOutcome, threads: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out.join("tables"))?;
    fs::create_dir_all(out.join("plots"))?;
    let mut written = Vec::new();
    let jobs: Vec<Value> = outcome.reports.iter().map(JobReport::summary).collect();
    let failures: Vec<Value> =
        outcome.failures.iter().map(|f| json!({"job": f.job, "error": f.error.to_string()})).collect();
    let verdicts = json!({"jobs": jobs, "failures": failures});
    let path = out.join("verdicts.json");
    fs::write(&path, serde_json::to_string_pretty(&verdicts)? + "\n")?;
    written.push(path);
    for report in &outcome.reports {
        let stem = file_stem(&report.name);
        if !report.verdicts.is_empty() {
            let mut csv = String::from(Verdict::CSV_HEADER);
            csv.push('\n');
            for v in &report.verdicts {
                csv.push_str(&v.csv_row());
                csv.push('\n');
            }
            let path = out.join("tables").join(format!("{stem}__verdicts.csv"));
            fs::write(&path, csv)?;
            written.push(path);
        }
        for t in &report.tables {
            let path = out.join("tables").join(format!("{stem}__{}.csv", file_stem(&t.name)));
            fs::write(&path, t.to_csv())?;
            written.push(path);
        }
        for p in &report.plots {
            let path = out.join("plots").join(format!("{stem}__{}.svg", file_stem(&p.name)));
            fs::write(&path, render_svg(p))?;
            written.push(path);
        }
    }
    let manifest = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "threads": threads,
        "jobs": configs.iter().map(|c| {
            let secs = outcome.runtimes.iter().find(|(j, _)| j == &c.name).map(|r| r.1);
            json!({"name": c.name, "seed": c.seed, "samples": c.samples, "directions": c.directions,
                   "runtime_seconds": secs, "config": c})
        }).collect::<Vec<_>>(),
        "total_runtime_seconds": outcome.runtimes.iter().map(|r| r.1).sum::<f64>(),
    });
    let path = out.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    written.push(path);
    Ok(written)
}
