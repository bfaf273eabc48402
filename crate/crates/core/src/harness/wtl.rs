//! Win/tie/loss bookkeeping.
//!
//! Per function and metric the lowest value wins. Every algorithm within
//! `tolerance` of the lowest value is in the leading group: a group of one
//! scores a win, a larger group scores a tie for each member. Everyone else
//! scores a loss.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::experiment::ExperimentReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Best,
    Mean,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Best => "best",
            Metric::Mean => "mean",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" => Ok(Metric::Best),
            "mean" => Ok(Metric::Mean),
            other => Err(Error::config(format!("unknown metric `{other}` (best or mean)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wtl {
    pub w: usize,
    pub t: usize,
    pub l: usize,
}

impl fmt::Display for Wtl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.w, self.t, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Win,
    Tie,
    Loss,
}

/// One row of a comparison table: a function and each algorithm's value.
#[derive(Debug, Clone, PartialEq)]
pub struct WtlRow {
    pub function: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtlSummary {
    pub metric: Metric,
    pub tolerance: f64,
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    /// `outcomes[f][a]`.
    pub outcomes: Vec<Vec<Outcome>>,
    /// Per algorithm, in `algorithms` order.
    pub totals: Vec<Wtl>,
}

impl WtlSummary {
    pub fn totals_for(&self, algorithm: &str) -> Option<Wtl> {
        let k = self.algorithms.iter().position(|a| a == algorithm)?;
        Some(self.totals[k])
    }

    /// Algorithms scoring a win or tie on `function`.
    pub fn leaders(&self, function: &str) -> Vec<&str> {
        let Some(f) = self.functions.iter().position(|x| x == function) else {
            return Vec::new();
        };
        self.outcomes[f]
            .iter()
            .zip(&self.algorithms)
            .filter(|(o, _)| **o != Outcome::Loss)
            .map(|(_, a)| a.as_str())
            .collect()
    }
}

fn key(v: f64) -> f64 {
    // NaN (no successful run) ranks last
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Scores a table whose rows hold one value per algorithm.
pub fn wtl_from_rows(
    algorithms: &[String],
    rows: &[WtlRow],
    metric: Metric,
    tolerance: f64,
) -> Result<WtlSummary> {
    if algorithms.len() < 2 {
        return Err(Error::Aggregation("w/t/l needs at least two algorithms".into()));
    }
    let mut outcomes = Vec::with_capacity(rows.len());
    let mut totals = vec![Wtl::default(); algorithms.len()];
    for row in rows {
        if row.values.len() != algorithms.len() {
            return Err(Error::Aggregation(format!(
                "row {} has {} values for {} algorithms",
                row.function,
                row.values.len(),
                algorithms.len()
            )));
        }
        let lowest = row.values.iter().map(|&v| key(v)).fold(f64::INFINITY, f64::min);
        let leading: Vec<bool> = row.values.iter().map(|&v| key(v) - lowest <= tolerance || key(v) == lowest).collect();
        let group = leading.iter().filter(|&&b| b).count();
        let out: Vec<Outcome> = leading
            .iter()
            .map(|&lead| match (lead, group) {
                (true, 1) => Outcome::Win,
                (true, _) => Outcome::Tie,
                (false, _) => Outcome::Loss,
            })
            .collect();
        for (t, o) in totals.iter_mut().zip(&out) {
            match o {
                Outcome::Win => t.w += 1,
                Outcome::Tie => t.t += 1,
                Outcome::Loss => t.l += 1,
            }
        }
        outcomes.push(out);
    }
    Ok(WtlSummary {
        metric,
        tolerance,
        algorithms: algorithms.to_vec(),
        functions: rows.iter().map(|r| r.function.clone()).collect(),
        outcomes,
        totals,
    })
}

/// Scores every function of a report. All algorithms must cover the same
/// function set.
pub fn compute_wtl(report: &ExperimentReport, metric: Metric, tolerance: f64) -> Result<WtlSummary> {
    let algorithms = report.algorithm_names();
    let keys = report.function_keys();
    let mut rows = Vec::with_capacity(keys.len());
    for (function, dim) in &keys {
        let mut values = Vec::with_capacity(algorithms.len());
        for a in &algorithms {
            let cell = report.cell(a, function, *dim).ok_or_else(|| {
                Error::Aggregation(format!("{a} has no result for {function} at dim {dim}"))
            })?;
            values.push(match (&cell.stats, metric) {
                (None, _) => f64::NAN,
                (Some(s), Metric::Best) => s.best,
                (Some(s), Metric::Mean) => s.mean,
            });
        }
        let label = if keys.iter().filter(|(f, _)| f == function).count() > 1 {
            format!("{function}_d{dim}")
        } else {
            function.clone()
        };
        rows.push(WtlRow { function: label, values });
    }
    wtl_from_rows(&algorithms, &rows, metric, tolerance)
}
