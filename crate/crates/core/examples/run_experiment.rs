//! Builds an experiment config in code, runs it, and writes the reports.

use mthorder::harness::{run_all, write_outputs, ExperimentConfig};

pub fn run_example() -> mthorder::Result<i32> {
    let config = ExperimentConfig::from_json(
        r#"{
            "name": "example_chain",
            "experiment": "chain",
            "functions": [{"profile": "gaussian", "body": {"kind": "cube", "dim": 1}}],
            "p_grid": [0.0, 1.0, 2.0],
            "directions": 4
        }"#,
    )?;
    let outcome = run_all(std::slice::from_ref(&config));
    let out = std::env::temp_dir().join("mthorder_example_chain");
    for path in write_outputs(&out, &[config], &outcome, rayon::current_num_threads())? {
        println!("wrote {}", path.display());
    }
    println!("exit code {}", outcome.exit_code());
    Ok(outcome.exit_code())
}

#[allow(dead_code)]
fn main() -> mthorder::Result<()> {
    run_example().map(|_| ())
}
