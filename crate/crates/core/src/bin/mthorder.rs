use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mthorder::harness::{catalog, run_all, write_outputs, ExperimentConfig};

#[derive(Parser)]
#[command(version, about = "Run covariogram and projection-body inequality experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config, or the built-in catalog with --all.
    Run {
        config: Option<PathBuf>,
        /// Override the seed of every experiment.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the sample budget of every experiment.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run every built-in experiment.
        #[arg(long)]
        all: bool,
        /// Print the built-in catalog and exit.
        #[arg(long)]
        list: bool,
    },
}

fn threads() -> usize {
    let requested = std::env::var("MTHORDER_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    if let Some(n) = requested {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    rayon::current_num_threads()
}

fn main() -> ExitCode {
    let Command::Run { config, seed, samples, out, all, list } = Cli::parse().command;
    if list {
        for c in catalog() {
            println!("{:<28} {}", c.name, c.experiment.describe());
        }
        return ExitCode::SUCCESS;
    }
    let mut configs = match (all, &config) {
        (true, None) => catalog(),
        (false, Some(path)) => match ExperimentConfig::load(path) {
            Ok(c) => vec![c],
            Err(e) => {
                eprintln!("invalid config: {e}");
                return ExitCode::from(2);
            }
        },
        _ => {
            eprintln!("give exactly one of <config> or --all");
            return ExitCode::from(2);
        }
    };
    for c in &mut configs {
        if let Some(s) = seed {
            c.seed = s;
        }
        if let Some(n) = samples {
            c.samples = n;
        }
        if let Err(e) = c.validate() {
            eprintln!("invalid config {}: {e}", c.name);
            return ExitCode::from(2);
        }
    }
    let out = out.unwrap_or_else(|| if all { PathBuf::from("results/all") } else { configs[0].out_dir() });
    let threads = threads();
    let outcome = run_all(&configs);
    for report in &outcome.reports {
        let status = if report.passed() { "pass" } else { "FAIL" };
        println!("{status} {} ({} verdicts, {} checks)", report.name, report.verdicts.len(), report.checks.len());
        for f in report.failures() {
            println!("    {f}");
        }
    }
    for f in &outcome.failures {
        eprintln!("numeric failure in job {}: {}", f.job, f.error);
    }
    if let Err(e) = write_outputs(&out, &configs, &outcome, threads) {
        eprintln!("could not write outputs to {}: {e}", out.display());
        return ExitCode::from(3);
    }
    println!("outputs written to {}", out.display());
    ExitCode::from(outcome.exit_code() as u8)
}
