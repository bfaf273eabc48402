//! Command-line front end. `main_with` is the whole program minus process
//! setup, so it can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::benchmarks::{resolve_function, CATALOG, DEFAULT_SUITE_SEED};
use crate::error::{Error, Result};
use crate::harness::{
    compute_wtl, export_traces, load_config, load_report, render_tables, run_experiment,
    write_report, Metric,
};
use crate::hide::run_hide_dump;
use crate::{Algorithm, Optimizer, Termination};

#[derive(Debug, Parser)]
#[command(name = "hide", version, about = "Hierarchy influenced differential evolution and baselines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one algorithm on one function and write its convergence trace.
    Run(RunArgs),
    /// Run a full experiment from a config file.
    Compare(CompareArgs),
    /// Inspect the benchmark catalog.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Recompute w/t/l tables from a stored report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// de, hide, jade or psode.
    #[arg(long)]
    algo: String,
    /// Catalog id (f1..f30) or base function name.
    #[arg(long = "fn")]
    function: String,
    #[arg(long, default_value_t = 10)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    generations: usize,
    /// Evaluation budget; the run stops at whichever budget runs out first.
    #[arg(long)]
    evaluations: Option<usize>,
    /// Population size (defaults to the algorithm's own).
    #[arg(long)]
    np: Option<usize>,
    /// Directory for the trace file.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// JSON parameter file for the algorithm, e.g. {"algorithm": "hide", "hc": 0.3}.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SUITE_SEED)]
    suite_seed: u64,
    /// HIDE only: write the per-generation hierarchy as JSON lines.
    #[arg(long)]
    dump_hierarchy: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's run count.
    #[arg(long)]
    runs: Option<usize>,
    /// Overrides the config's base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config's generation budget.
    #[arg(long)]
    generations: Option<usize>,
    /// Overrides every algorithm's population size.
    #[arg(long)]
    np: Option<usize>,
    /// Overrides every function's dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Output directory (default: the config's, else `results`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: the config's, else all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// List the 30 catalog functions with their class.
    List,
    /// Evaluate a function at a point.
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
struct ProbeArgs {
    #[arg(long = "fn")]
    function: String,
    #[arg(long, default_value_t = 10)]
    dim: usize,
    /// `optimum` or comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    #[arg(long, default_value_t = DEFAULT_SUITE_SEED)]
    suite_seed: u64,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Report JSON written by `compare`.
    report: PathBuf,
    /// Tie tolerance (default: the one stored in the report).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Also write the tables here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 success, 1 runtime error, 2 usage.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Run(a) => run(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Bench(BenchCommand::List) => bench_list(out),
        Command::Bench(BenchCommand::Probe(a)) => bench_probe(a, out),
        Command::Report(a) => report(a, out),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn run(a: RunArgs, out: &mut dyn Write) -> Result<()> {
    let mut algorithm = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            serde_json::from_str::<Algorithm>(&text).map_err(|e| Error::Parse {
                path: path.display().to_string(),
                message: e.to_string(),
            })?
        }
        None => Algorithm::from_name(&a.algo)?,
    };
    if algorithm.name() != Algorithm::from_name(&a.algo)?.name() {
        return Err(Error::config(format!(
            "--algo {} does not match the `{}` parameter file",
            a.algo,
            algorithm.name()
        )));
    }
    if let Some(np) = a.np {
        algorithm = algorithm.with_np(np);
    }
    algorithm.validate()?;
    let f = resolve_function(&a.function, a.dim, a.suite_seed)?;
    let termination = Termination {
        max_generations: Some(a.generations),
        max_evaluations: a.evaluations,
        target_fitness: None,
    };

    let result = match (&a.dump_hierarchy, algorithm) {
        (Some(path), Algorithm::Hide(params)) => {
            let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            let r = run_hide_dump(&f, &params, &termination, a.seed, &mut w)?;
            w.flush().map_err(|e| Error::io(path, e))?;
            r
        }
        (Some(_), other) => {
            return Err(Error::config(format!(
                "--dump-hierarchy needs --algo hide, not {}",
                other.name()
            )))
        }
        (None, alg) => alg.run(&f, &termination, a.seed)?,
    };

    create_dir(&a.out)?;
    let path = a.out.join(format!(
        "{}_{}_d{}_s{}.csv",
        algorithm.name(),
        a.function,
        a.dim,
        a.seed
    ));
    let mut csv = String::from("generation,best\n");
    for (g, v) in result.trace.iter().enumerate() {
        csv.push_str(&format!("{g},{v}\n"));
    }
    fs::write(&path, csv).map_err(|e| Error::io(&path, e))?;
    writeln!(out, "best {}", result.best_fitness()).map_err(stdout_err)?;
    writeln!(
        out,
        "generations {} evaluations {} faults {}",
        result.generations, result.evaluations, result.faults
    )
    .map_err(stdout_err)?;
    writeln!(out, "trace {}", path.display()).map_err(stdout_err)?;
    Ok(())
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = load_config(&a.config)?;
    if let Some(r) = a.runs {
        config.runs = r;
    }
    if let Some(s) = a.seed {
        config.base_seed = s;
    }
    if let Some(g) = a.generations {
        config.termination.max_generations = Some(g);
    }
    if let Some(np) = a.np {
        for e in &mut config.algorithms {
            e.algorithm = e.algorithm.with_np(np);
        }
    }
    if let Some(d) = a.dim {
        for f in &mut config.functions {
            f.dim = d;
        }
    }
    let dir = a
        .out
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    config.output_dir = Some(dir.clone());
    let jobs = a
        .jobs
        .or(config.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));

    let report = run_experiment(&config, jobs)?;
    create_dir(&dir)?;
    write_report(&report, dir.join("report.json"))?;
    let tables = render_tables(&report)?;
    let tables_path = dir.join("tables.txt");
    fs::write(&tables_path, &tables).map_err(|e| Error::io(&tables_path, e))?;
    let traces = export_traces(&report, dir.join("traces"))?;
    write!(out, "{tables}").map_err(stdout_err)?;
    writeln!(
        out,
        "wrote {} and {} trace file(s) under {}",
        dir.join("report.json").display(),
        traces.len(),
        dir.display()
    )
    .map_err(stdout_err)?;
    Ok(())
}

fn bench_list(out: &mut dyn Write) -> Result<()> {
    for e in CATALOG.iter() {
        writeln!(
            out,
            "{:<4} {:<12} bias {:>5}  {}",
            e.id(),
            e.class.to_string(),
            e.bias(),
            e.description()
        )
        .map_err(stdout_err)?;
    }
    Ok(())
}

fn bench_probe(a: ProbeArgs, out: &mut dyn Write) -> Result<()> {
    let f = resolve_function(&a.function, a.dim, a.suite_seed)?;
    let x: Vec<f64> = if a.at == "optimum" {
        f.optimum()
            .ok_or_else(|| Error::config(format!("{} has no known optimum", f.id())))?
            .position
            .clone()
    } else {
        a.at.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::config(format!("`{t}` is not a number")))
            })
            .collect::<Result<_>>()?
    };
    f.space().check_dim(&x)?;
    writeln!(out, "{}", f.eval(&x)).map_err(stdout_err)?;
    Ok(())
}

fn report(a: ReportArgs, out: &mut dyn Write) -> Result<()> {
    let mut report = load_report(&a.report)?;
    if let Some(t) = a.tolerance {
        report.config.tolerance = t;
    }
    let mut text = render_tables(&report)?;
    if report.algorithm_names().len() >= 2 {
        for metric in [Metric::Best, Metric::Mean] {
            let s = compute_wtl(&report, metric, report.config.tolerance)?;
            text.push_str(&format!("w/t/l ({metric}):"));
            for (name, t) in s.algorithms.iter().zip(&s.totals) {
                text.push_str(&format!(" {name} {t}"));
            }
            text.push('\n');
        }
    }
    if let Some(path) = &a.out {
        fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    write!(out, "{text}").map_err(stdout_err)?;
    Ok(())
}
