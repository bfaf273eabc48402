//! Multi-run experiments: configuration, parallel execution, statistics,
//! w/t/l scoring, trace export and reports.

mod config;
mod experiment;
mod report;
mod stats;
mod traces;
mod wtl;

pub use config::{load_config, AlgorithmEntry, ExperimentConfig, FunctionEntry};
pub use experiment::{
    run_experiment, sample_points, Cell, CellTiming, CellTrace, ExperimentReport, RunRecord,
};
pub use report::{format_value, load_report, render_tables, write_report};
pub use stats::RunStats;
pub use traces::export_traces;
pub use wtl::{compute_wtl, wtl_from_rows, Metric, Outcome, Wtl, WtlRow, WtlSummary};
