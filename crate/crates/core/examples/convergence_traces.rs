//! Runs a small experiment and writes the mean convergence curves as CSV,
//! plus the JSON report.
//!
//!     cargo run --release --example convergence_traces [out dir]

use hide::harness::{export_traces, run_experiment, write_report, AlgorithmEntry, ExperimentConfig, FunctionEntry};
use hide::{Algorithm, Termination};

fn main() -> hide::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "results/traces-example".into());
    let algorithms = vec![
        AlgorithmEntry::new("DE", Algorithm::from_name("de")?),
        AlgorithmEntry::new("HIDE", Algorithm::from_name("hide")?),
    ];
    let mut config = ExperimentConfig::new(algorithms, vec![FunctionEntry::new("f7", 10), FunctionEntry::new("f13", 10)]);
    config.runs = 8;
    config.trace_stride = 25;
    config.termination = Termination::generations(500);

    let report = run_experiment(&config, std::thread::available_parallelism().map_or(1, |n| n.get()))?;
    for path in export_traces(&report, &out)? {
        println!("{}", path.display());
        let text = std::fs::read_to_string(&path).map_err(|e| hide::Error::io(&path, e))?;
        for line in text.lines().take(4) {
            println!("  {line}");
        }
    }
    let json = std::path::Path::new(&out).join("report.json");
    write_report(&report, &json)?;
    println!("{}", json.display());
    Ok(())
}
