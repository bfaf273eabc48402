use serde::{Deserialize, Serialize};

use crate::baselines::{JadeParams, PsoDeParams};
use crate::benchmarks::ObjectiveFunction;
use crate::de::DeParams;
use crate::domain::{RunResult, Termination};
use crate::error::{Error, Result};
use crate::hide::HideParams;

/// A seeded single-run optimizer.
pub trait Optimizer {
    fn name(&self) -> &'static str;

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult>;
}

/// Any of the shipped algorithms together with its parameters.
///
/// Serialized with an `algorithm` tag next to the parameters, e.g.
/// `{"algorithm": "hide", "hc": 0.27}`; omitted parameters take their
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "lowercase")]
pub enum Algorithm {
    De(DeParams),
    Hide(HideParams),
    Jade(JadeParams),
    Psode(PsoDeParams),
}

impl Algorithm {
    pub const NAMES: [&'static str; 4] = ["de", "hide", "jade", "psode"];

    /// The named algorithm with default parameters.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "de" => Algorithm::De(DeParams::default()),
            "hide" => Algorithm::Hide(HideParams::default()),
            "jade" => Algorithm::Jade(JadeParams::default()),
            "psode" | "pso-de" | "pso_de" => Algorithm::Psode(PsoDeParams::default()),
            other => {
                return Err(Error::config(format!(
                    "unknown algorithm `{other}` (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn np(&self) -> usize {
        match self {
            Algorithm::De(p) => p.np,
            Algorithm::Hide(p) => p.np,
            Algorithm::Jade(p) => p.np,
            Algorithm::Psode(p) => p.np,
        }
    }

    pub fn with_np(mut self, np: usize) -> Self {
        match &mut self {
            Algorithm::De(p) => p.np = np,
            Algorithm::Hide(p) => p.np = np,
            Algorithm::Jade(p) => p.np = np,
            Algorithm::Psode(p) => p.np = np,
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algorithm::De(p) => p.validate(),
            Algorithm::Hide(p) => p.validate(),
            Algorithm::Jade(p) => p.validate(),
            Algorithm::Psode(p) => p.validate(),
        }
    }

    fn inner(&self) -> &dyn Optimizer {
        match self {
            Algorithm::De(p) => p,
            Algorithm::Hide(p) => p,
            Algorithm::Jade(p) => p,
            Algorithm::Psode(p) => p,
        }
    }
}

impl Optimizer for Algorithm {
    fn name(&self) -> &'static str {
        self.inner().name()
    }

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult> {
        self.inner().run(f, termination, seed)
    }
}
