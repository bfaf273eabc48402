//! Hierarchy influenced differential evolution, classical DE, JADE and
//! PSO-DE, a 30-function benchmark suite, and an experiment harness.
//!
//! ```no_run
//! use hide::{benchmarks, hide::HideParams, Optimizer, Termination};
//!
//! let f = benchmarks::suite_function(1, 10, benchmarks::DEFAULT_SUITE_SEED)?;
//! let result = HideParams::default().run(&f, &Termination::generations(1000), 7)?;
//! println!("{}", result.best_fitness());
//! # Ok::<(), hide::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod algorithm;
pub mod baselines;
pub mod benchmarks;
pub mod cli;
pub mod de;
pub mod domain;
pub mod error;
pub mod harness;
pub mod hide;

pub use algorithm::{Algorithm, Optimizer};
pub use benchmarks::ObjectiveFunction;
pub use domain::{
    clamp_to_bounds, select_greedy, BoundaryPolicy, Evaluator, Individual, Population, RngStream,
    RunResult, SearchSpace, Termination,
};
pub use error::{Error, Result};
