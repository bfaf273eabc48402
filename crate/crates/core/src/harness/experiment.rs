use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::stats::RunStats;
use crate::domain::RunResult;
use crate::error::{Error, Result};
use crate::Optimizer;

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub final_fitness: f64,
    pub generations: usize,
    pub evaluations: usize,
    pub faults: usize,
    /// Runs with evaluation faults are excluded from statistics.
    pub failed: bool,
}

/// Best-so-far convergence trace of a cell, sampled at `generations`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CellTrace {
    pub generations: Vec<usize>,
    /// Mean over the successful runs.
    pub mean: Vec<f64>,
    /// One row per successful run, only when requested in the config.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<Vec<f64>>,
}

/// All runs of one algorithm on one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    /// `None` when every run failed.
    pub stats: Option<RunStats>,
    pub runs: Vec<RunRecord>,
    pub trace: CellTrace,
}

impl Cell {
    pub fn failed_runs(&self) -> usize {
        self.runs.iter().filter(|r| r.failed).count()
    }
}

/// Wall-clock time per cell, kept apart from the results so that reports
/// of identical experiments compare equal apart from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellTiming {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Algorithm-major, in config order.
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub timings: Vec<CellTiming>,
}

impl ExperimentReport {
    pub fn cell(&self, algorithm: &str, function: &str, dim: usize) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.function == function && c.dim == dim)
    }

    pub fn algorithm_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for c in &self.cells {
            if !names.contains(&c.algorithm) {
                names.push(c.algorithm.clone());
            }
        }
        names
    }

    /// Distinct `(function, dim)` pairs in first-seen order.
    pub fn function_keys(&self) -> Vec<(String, usize)> {
        let mut keys: Vec<(String, usize)> = Vec::new();
        for c in &self.cells {
            let k = (c.function.clone(), c.dim);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        keys
    }
}

/// Sampled generations: multiples of `stride` up to `last`, plus `last`.
pub fn sample_points(last: usize, stride: usize) -> Vec<usize> {
    let mut g: Vec<usize> = (0..=last).step_by(stride).collect();
    if g.last() != Some(&last) {
        g.push(last);
    }
    g
}

fn sample(trace: &[f64], points: &[usize]) -> Vec<f64> {
    // a run that stopped early keeps its final best-so-far value
    points
        .iter()
        .map(|&g| trace[g.min(trace.len() - 1)])
        .collect()
}

fn assemble_cell(
    algorithm: &str,
    function: &str,
    dim: usize,
    results: Vec<RunResult>,
    config: &ExperimentConfig,
) -> Cell {
    let last = results.iter().map(|r| r.trace.len() - 1).max().unwrap_or(0);
    let points = sample_points(last, config.trace_stride);
    let runs: Vec<RunRecord> = results
        .iter()
        .map(|r| RunRecord {
            seed: r.seed,
            final_fitness: r.best_fitness(),
            generations: r.generations,
            evaluations: r.evaluations,
            faults: r.faults,
            failed: r.faults > 0,
        })
        .collect();
    let ok: Vec<&RunResult> = results.iter().filter(|r| r.faults == 0).collect();
    let failed = runs.len() - ok.len();
    if failed > 0 {
        log::warn!("{algorithm} on {function} d{dim}: {failed} run(s) hit evaluation faults and are excluded");
    }
    let sampled: Vec<Vec<f64>> = ok.iter().map(|r| sample(&r.trace, &points)).collect();
    let mean = if sampled.is_empty() {
        Vec::new()
    } else {
        (0..points.len())
            .map(|k| sampled.iter().map(|s| s[k]).sum::<f64>() / sampled.len() as f64)
            .collect()
    };
    Cell {
        algorithm: algorithm.to_string(),
        function: function.to_string(),
        dim,
        stats: RunStats::from_finals(ok.iter().map(|r| r.best_fitness()).collect()),
        runs,
        trace: CellTrace {
            generations: if sampled.is_empty() { Vec::new() } else { points },
            mean,
            runs: if config.keep_run_traces { sampled } else { Vec::new() },
        },
    }
}

/// Runs every (algorithm, function, run) combination. Run `r` of every
/// cell uses seed `base_seed + r`, so the report does not depend on `jobs`
/// or on scheduling.
pub fn run_experiment(config: &ExperimentConfig, jobs: usize) -> Result<ExperimentReport> {
    config.validate()?;
    let functions = config.resolve_functions()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot start {jobs} worker threads: {e}")))?;

    let mut tasks = Vec::new();
    for a in 0..config.algorithms.len() {
        for f in 0..functions.len() {
            for r in 0..config.runs {
                tasks.push((a, f, r));
            }
        }
    }
    let outcomes: Vec<Result<(RunResult, f64)>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(a, f, r)| {
                let seed = config.base_seed.wrapping_add(r as u64);
                let start = Instant::now();
                let result = config.algorithms[a]
                    .algorithm
                    .run(&functions[f], &config.termination, seed)?;
                Ok((result, start.elapsed().as_secs_f64()))
            })
            .collect()
    });

    let mut outcomes = outcomes.into_iter();
    let mut cells = Vec::new();
    let mut timings = Vec::new();
    for entry in &config.algorithms {
        for (fe, function) in config.functions.iter().zip(&functions) {
            let mut results = Vec::with_capacity(config.runs);
            let mut wall = 0.0;
            for _ in 0..config.runs {
                let (r, secs) = outcomes.next().expect("one outcome per task")?;
                results.push(r);
                wall += secs;
            }
            log::info!("{} on {} d{}: {} runs in {wall:.2}s", entry.name, fe.id, fe.dim, config.runs);
            cells.push(assemble_cell(&entry.name, &fe.id, function.dim(), results, config));
            timings.push(CellTiming {
                algorithm: entry.name.clone(),
                function: fe.id.clone(),
                dim: function.dim(),
                wall_seconds: wall,
            });
        }
    }
    let mut stored = config.clone();
    stored.jobs = None;
    Ok(ExperimentReport {
        config: stored,
        cells,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{AlgorithmEntry, FunctionEntry};
    use crate::{Algorithm, Termination};

    fn small(algs: &[(&str, &str)], fns: &[&str], runs: usize, gens: usize) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(
            algs.iter()
                .map(|(n, a)| AlgorithmEntry::new(*n, Algorithm::from_name(a).unwrap().with_np(12)))
                .collect(),
            fns.iter().map(|f| FunctionEntry::new(*f, 3)).collect(),
        );
        c.runs = runs;
        c.termination = Termination::generations(gens);
        c
    }

    #[test]
    fn sample_points_keep_last() {
        assert_eq!(sample_points(10, 1).len(), 11);
        assert_eq!(sample_points(10, 4), vec![0, 4, 8, 10]);
        assert_eq!(sample_points(8, 4), vec![0, 4, 8]);
        assert_eq!(sample_points(0, 3), vec![0]);
    }

    #[test]
    fn single_run_cell() {
        let r = run_experiment(&small(&[("h", "hide")], &["f1"], 1, 5), 1).unwrap();
        assert_eq!(r.cells.len(), 1);
        let s = r.cells[0].stats.as_ref().unwrap();
        assert_eq!(s.best, s.mean);
        assert_eq!(r.cells[0].trace.generations.len(), 6);
    }

    #[test]
    fn duplicate_entries_under_other_names_agree() {
        let r = run_experiment(&small(&[("a", "jade"), ("b", "jade")], &["f5"], 3, 10), 1).unwrap();
        assert_eq!(r.cells[0].stats, r.cells[1].stats);
        assert_eq!(r.cells[0].trace, r.cells[1].trace);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let c = small(&[("h", "hide"), ("d", "de")], &["f1", "rastrigin"], 4, 8);
        let a = run_experiment(&c, 1).unwrap();
        let b = run_experiment(&c, 3).unwrap();
        assert_eq!(a.cells, b.cells);
        assert_eq!(a.config, b.config);
    }

    #[test]
    fn unknown_function_fails_before_running() {
        let c = small(&[("h", "hide")], &["f1", "nope"], 1, 2);
        assert!(matches!(run_experiment(&c, 1), Err(Error::Catalog(_)) | Err(Error::Config(_))));
    }

    #[test]
    fn seeds_follow_schedule() {
        let mut c = small(&[("d", "de")], &["f1"], 3, 2);
        c.base_seed = 40;
        let r = run_experiment(&c, 2).unwrap();
        let seeds: Vec<u64> = r.cells[0].runs.iter().map(|x| x.seed).collect();
        assert_eq!(seeds, vec![40, 41, 42]);
    }
}
