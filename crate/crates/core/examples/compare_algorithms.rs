//! All four algorithms on a few suite functions, scored with w/t/l.
//!
//!     cargo run --release --example compare_algorithms

use hide::harness::{compute_wtl, render_tables, run_experiment, AlgorithmEntry, ExperimentConfig, FunctionEntry, Metric};
use hide::{Algorithm, Termination};

fn main() -> hide::Result<()> {
    let algorithms = ["de", "jade", "psode", "hide"]
        .iter()
        .map(|n| Ok(AlgorithmEntry::new(n.to_uppercase(), Algorithm::from_name(n)?.with_np(50))))
        .collect::<hide::Result<Vec<_>>>()?;
    let functions = ["f1", "f5", "f11", "f21"].iter().map(|id| FunctionEntry::new(*id, 10)).collect();

    let mut config = ExperimentConfig::new(algorithms, functions);
    config.runs = 5;
    config.termination = Termination::generations(300);
    let report = run_experiment(&config, std::thread::available_parallelism().map_or(1, |n| n.get()))?;

    print!("{}", render_tables(&report)?);
    let wtl = compute_wtl(&report, Metric::Mean, config.tolerance)?;
    for (name, t) in wtl.algorithms.iter().zip(&wtl.totals) {
        println!("{name:>6} mean w/t/l {t}");
    }
    Ok(())
}
