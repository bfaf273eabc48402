use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::benchmarks::{
    load_cec_data, resolve_function, suite_function_from_data, ObjectiveFunction,
    DEFAULT_SUITE_SEED,
};
use crate::domain::Termination;
use crate::error::{Error, Result};
use crate::Algorithm;

/// An algorithm under a display name, e.g. `{"name": "HIDE", "algorithm": "hide"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    pub name: String,
    #[serde(flatten)]
    pub algorithm: Algorithm,
}

impl AlgorithmEntry {
    pub fn new(name: impl Into<String>, algorithm: Algorithm) -> Self {
        AlgorithmEntry {
            name: name.into(),
            algorithm,
        }
    }
}

/// A catalog id (`f1`..`f30`) or base-function name at a dimension.
/// `data` points at a shift/rotation file to use instead of the generated
/// transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<PathBuf>,
}

impl FunctionEntry {
    pub fn new(id: impl Into<String>, dim: usize) -> Self {
        FunctionEntry {
            id: id.into(),
            dim,
            data: None,
        }
    }

    pub fn label(&self) -> String {
        format!("{}_d{}", self.id, self.dim)
    }

    pub fn resolve(&self, suite_seed: u64) -> Result<ObjectiveFunction> {
        match &self.data {
            None => resolve_function(&self.id, self.dim, suite_seed),
            Some(path) => {
                let index = self
                    .id
                    .strip_prefix('f')
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| {
                        Error::config(format!("data files apply to catalog ids, not `{}`", self.id))
                    })?;
                let data = load_cec_data(path, &self.id, self.dim)?;
                suite_function_from_data(index, &data)
            }
        }
    }
}

fn default_runs() -> usize {
    100
}

fn default_stride() -> usize {
    1
}

fn default_suite_seed() -> u64 {
    DEFAULT_SUITE_SEED
}

fn default_tolerance() -> f64 {
    1e-8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub algorithms: Vec<AlgorithmEntry>,
    pub functions: Vec<FunctionEntry>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub termination: Termination,
    /// Run `r` uses seed `base_seed + r`.
    #[serde(default)]
    pub base_seed: u64,
    /// Seed for the generated benchmark transforms.
    #[serde(default = "default_suite_seed")]
    pub suite_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Keep every `trace_stride`-th generation of the convergence traces
    /// (the last generation is always kept).
    #[serde(default = "default_stride")]
    pub trace_stride: usize,
    /// Store per-run traces in the report in addition to their mean.
    #[serde(default)]
    pub keep_run_traces: bool,
    /// Absolute tolerance for w/t/l ties.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    /// Worker threads. Results do not depend on it, so it is read from
    /// config files but never written into reports.
    #[serde(default, skip_serializing)]
    pub jobs: Option<usize>,
    /// Free text, ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl ExperimentConfig {
    pub fn new(algorithms: Vec<AlgorithmEntry>, functions: Vec<FunctionEntry>) -> Self {
        ExperimentConfig {
            name: String::new(),
            algorithms,
            functions,
            runs: default_runs(),
            termination: Termination::default(),
            base_seed: 0,
            suite_seed: DEFAULT_SUITE_SEED,
            output_dir: None,
            trace_stride: default_stride(),
            keep_run_traces: false,
            tolerance: default_tolerance(),
            jobs: None,
            comment: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        if self.trace_stride == 0 {
            return Err(Error::config("trace_stride must be at least 1"));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::config("tolerance must be >= 0"));
        }
        if self.algorithms.is_empty() || self.functions.is_empty() {
            return Err(Error::config("need at least one algorithm and one function"));
        }
        for (k, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..k].iter().any(|b| b.name == a.name) {
                return Err(Error::config(format!("algorithm name `{}` used twice", a.name)));
            }
            a.algorithm
                .validate()
                .map_err(|e| Error::config(format!("algorithm `{}`: {e}", a.name)))?;
        }
        self.termination.validate()
    }

    /// Builds every function, failing before any run if one is unknown.
    pub fn resolve_functions(&self) -> Result<Vec<ObjectiveFunction>> {
        self.functions
            .iter()
            .map(|f| f.resolve(self.suite_seed))
            .collect()
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let text = r#"{
            "algorithms": [{"name": "HIDE", "algorithm": "hide"}, {"name": "DE", "algorithm": "de", "f": 0.6}],
            "functions": [{"id": "f1", "dim": 10}],
            "termination": {"max_generations": 50},
            "jobs": 2
        }"#;
        let e: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(e.jobs, Some(2));
        assert_eq!(e.runs, 100);
        assert_eq!(e.suite_seed, DEFAULT_SUITE_SEED);
        assert_eq!(e.algorithms[1].algorithm, Algorithm::De(crate::de::DeParams { f: 0.6, ..Default::default() }));
        e.validate().unwrap();
        assert_eq!(e.resolve_functions().unwrap()[0].id(), "f1");
    }

    #[test]
    fn rejects_bad_entries() {
        let mut c = ExperimentConfig::new(
            vec![AlgorithmEntry::new("a", Algorithm::from_name("de").unwrap())],
            vec![FunctionEntry::new("f99", 10)],
        );
        c.validate().unwrap();
        assert!(c.resolve_functions().is_err());
        c.runs = 0;
        assert!(c.validate().is_err());
        c.runs = 1;
        c.algorithms.push(c.algorithms[0].clone());
        assert!(c.validate().is_err());
    }

    #[test]
    fn shipped_example_config_is_valid() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/desk.json");
        let c = load_config(path).unwrap();
        c.validate().unwrap();
        c.resolve_functions().unwrap();
    }
}
