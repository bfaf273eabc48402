//! A single HIDE run on a shifted, rotated Rastrigin.
//!
//!     cargo run --release --example quickstart

use hide::benchmarks::{suite_function, DEFAULT_SUITE_SEED};
use hide::hide::HideParams;
use hide::{Optimizer, Termination};

fn main() -> hide::Result<()> {
    let f = suite_function(5, 10, DEFAULT_SUITE_SEED)?;
    let params = HideParams::default();
    let result = params.run(&f, &Termination::generations(1000), 7)?;

    println!("{}: {}", f.id(), f.description());
    println!("best fitness {:.6} (optimum {})", result.best_fitness(), f.bias());
    println!("{} generations, {} evaluations", result.generations, result.evaluations);
    for g in (0..result.trace.len()).step_by(100) {
        println!("  gen {g:>4}  {:.6e}", result.trace[g] - f.bias());
    }
    Ok(())
}
