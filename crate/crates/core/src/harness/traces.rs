use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::experiment::ExperimentReport;
use crate::error::{Error, Result};

/// Writes one `{function}_d{dim}.csv` per function of the report with a
/// `generation` column and one mean best-so-far column per algorithm.
///
/// Rows cover the union of the algorithms' sampled generations; an
/// algorithm whose trace ended earlier repeats its last value, and one with
/// no successful run leaves its cells empty. Returns the written paths.
pub fn export_traces(report: &ExperimentReport, output_dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = output_dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let algorithms = report.algorithm_names();
    let mut written = Vec::new();
    for (function, dim) in report.function_keys() {
        let traces: Vec<_> = algorithms
            .iter()
            .map(|a| report.cell(a, &function, dim).map(|c| &c.trace))
            .collect();
        let mut generations: Vec<usize> = traces
            .iter()
            .flatten()
            .flat_map(|t| t.generations.iter().copied())
            .collect();
        generations.sort_unstable();
        generations.dedup();

        let mut out = String::from("generation");
        for a in &algorithms {
            write!(out, ",{a}").unwrap();
        }
        out.push('\n');
        for &g in &generations {
            write!(out, "{g}").unwrap();
            for t in &traces {
                out.push(',');
                if let Some(t) = t {
                    // latest sample at or before g
                    let k = t.generations.partition_point(|&x| x <= g);
                    if k > 0 {
                        write!(out, "{}", t.mean[k - 1]).unwrap();
                    }
                }
            }
            out.push('\n');
        }
        let path = dir.join(format!("{function}_d{dim}.csv"));
        fs::write(&path, out).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
