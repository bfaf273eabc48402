use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::experiment::ExperimentReport;
use super::wtl::{compute_wtl, Metric};
use crate::error::{Error, Result};

pub fn write_report(report: &ExperimentReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(report)?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn load_report(path: impl AsRef<Path>) -> Result<ExperimentReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Compact rendering: fixed point for moderate magnitudes, scientific
/// otherwise.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        return "-".into();
    }
    let a = v.abs();
    if v == 0.0 || (1e-3..1e7).contains(&a) {
        format!("{v:.6}")
    } else {
        format!("{v:.6e}")
    }
}

fn push_row(out: &mut String, cells: &[String], widths: &[usize]) {
    for (k, (c, w)) in cells.iter().zip(widths).enumerate() {
        if k == 0 {
            write!(out, "{c:<w$}").unwrap();
        } else {
            write!(out, "  {c:>w$}").unwrap();
        }
    }
    out.push('\n');
}

/// A plain-text table per dimension: one row per function with each
/// algorithm's best and mean, and w/t/l totals underneath.
pub fn render_tables(report: &ExperimentReport) -> Result<String> {
    let algorithms = report.algorithm_names();
    let tolerance = report.config.tolerance;
    let mut dims: Vec<usize> = report.function_keys().iter().map(|(_, d)| *d).collect();
    dims.sort_unstable();
    dims.dedup();

    let mut out = String::new();
    for dim in dims {
        let sub = ExperimentReport {
            config: report.config.clone(),
            cells: report.cells.iter().filter(|c| c.dim == dim).cloned().collect(),
            timings: Vec::new(),
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["function".to_string()];
        for a in &algorithms {
            header.push(format!("{a} best"));
            header.push(format!("{a} mean"));
        }
        rows.push(header);
        for (function, _) in sub.function_keys() {
            let mut row = vec![function.clone()];
            for a in &algorithms {
                let stats = sub.cell(a, &function, dim).and_then(|c| c.stats.as_ref());
                row.push(stats.map_or("-".into(), |s| format_value(s.best)));
                row.push(stats.map_or("-".into(), |s| format_value(s.mean)));
            }
            rows.push(row);
        }
        if algorithms.len() >= 2 {
            let best = compute_wtl(&sub, Metric::Best, tolerance)?;
            let mean = compute_wtl(&sub, Metric::Mean, tolerance)?;
            let mut row = vec!["w/t/l".to_string()];
            for k in 0..algorithms.len() {
                row.push(best.totals[k].to_string());
                row.push(mean.totals[k].to_string());
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        writeln!(out, "Dimension {dim}").unwrap();
        for r in &rows {
            push_row(&mut out, r, &widths);
        }
        out.push('\n');
    }
    Ok(out)
}
