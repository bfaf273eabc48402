use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FunctionClass, ObjectiveFunction, Optimum};
use crate::domain::SearchSpace;
use crate::error::{Error, Result};

/// Default CEC domain.
pub const DEFAULT_BOUND: f64 = 100.0;

/// Schwefel's offset; the per-coordinate optimum of `z sin(sqrt|z|)`.
const SCHWEFEL_SHIFT: f64 = 4.209687462275036e2;

/// Building blocks of the benchmark suite.
///
/// Every function here has its global minimum 0 at the origin. Rosenbrock
/// and Levy are evaluated at `z + 1` internally so that this holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunction {
    Sphere,
    BentCigar,
    Zakharov,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel,
    Levy,
    ExpandedSchafferF6,
    HighConditionedElliptic,
    Discus,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 12] = [
        BaseFunction::Sphere,
        BaseFunction::BentCigar,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel,
        BaseFunction::Levy,
        BaseFunction::ExpandedSchafferF6,
        BaseFunction::HighConditionedElliptic,
        BaseFunction::Discus,
    ];

    pub fn id(self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel => "schwefel",
            BaseFunction::Levy => "levy",
            BaseFunction::ExpandedSchafferF6 => "expanded_schaffer_f6",
            BaseFunction::HighConditionedElliptic => "high_conditioned_elliptic",
            BaseFunction::Discus => "discus",
        }
    }

    pub fn class(self) -> FunctionClass {
        match self {
            BaseFunction::Sphere
            | BaseFunction::BentCigar
            | BaseFunction::Zakharov
            | BaseFunction::HighConditionedElliptic
            | BaseFunction::Discus => FunctionClass::Unimodal,
            _ => FunctionClass::Multimodal,
        }
    }

    /// Formulas coupling neighbouring coordinates need two of them.
    pub fn min_dim(self) -> usize {
        match self {
            BaseFunction::Rosenbrock
            | BaseFunction::ExpandedSchafferF6
            | BaseFunction::HighConditionedElliptic => 2,
            _ => 1,
        }
    }

    /// Input scaling used by the suite so that `[-100, 100]` maps onto the
    /// function's customary domain.
    pub fn suite_scale(self) -> f64 {
        match self {
            BaseFunction::Rosenbrock => 2.048 / 100.0,
            BaseFunction::Rastrigin => 5.12 / 100.0,
            BaseFunction::Schwefel => 1000.0 / 100.0,
            BaseFunction::Griewank => 600.0 / 100.0,
            _ => 1.0,
        }
    }

    /// Evaluates the function on any number of coordinates; an empty slice
    /// scores 0.
    pub fn eval(self, z: &[f64]) -> f64 {
        if z.is_empty() {
            return 0.0;
        }
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::BentCigar => {
                z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
            }
            BaseFunction::Zakharov => {
                let sq: f64 = z.iter().map(|v| v * v).sum();
                let lin: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| 0.5 * (i + 1) as f64 * v)
                    .sum();
                sq + lin.powi(2) + lin.powi(4)
            }
            BaseFunction::Rosenbrock => z
                .windows(2)
                .map(|w| {
                    let (a, b) = (w[0] + 1.0, w[1] + 1.0);
                    100.0 * (a * a - b).powi(2) + (a - 1.0).powi(2)
                })
                .sum(),
            BaseFunction::Rastrigin => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Ackley => {
                let n = z.len() as f64;
                let sq = z.iter().map(|v| v * v).sum::<f64>() / n;
                let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                // grouped so the origin evaluates to exactly 0
                (20.0 - 20.0 * (-0.2 * sq.sqrt()).exp()) + (E - cs.exp())
            }
            BaseFunction::Griewank => {
                let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum - prod + 1.0
            }
            BaseFunction::Schwefel => {
                let n = z.len() as f64;
                let peak = schwefel_term(SCHWEFEL_SHIFT, n);
                z.iter()
                    .map(|v| peak - schwefel_term(v + SCHWEFEL_SHIFT, n))
                    .sum()
            }
            BaseFunction::Levy => {
                let w = |v: f64| 1.0 + v / 4.0;
                let d = z.len();
                let w1 = w(z[0]);
                let wd = w(z[d - 1]);
                let mut total = (PI * w1).sin().powi(2);
                for &v in &z[..d - 1] {
                    let wi = w(v);
                    total += (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2));
                }
                total + (wd - 1.0).powi(2) * (1.0 + (2.0 * PI * wd).sin().powi(2))
            }
            BaseFunction::ExpandedSchafferF6 => {
                let d = z.len();
                (0..d).map(|i| schaffer_f6(z[i], z[(i + 1) % d])).sum()
            }
            BaseFunction::HighConditionedElliptic => {
                let d = z.len();
                if d == 1 {
                    return z[0] * z[0];
                }
                z.iter()
                    .enumerate()
                    .map(|(i, v)| 1e6f64.powf(i as f64 / (d - 1) as f64) * v * v)
                    .sum()
            }
            BaseFunction::Discus => 1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>(),
        }
    }
}

/// One coordinate of the modified Schwefel function, including the
/// quadratic penalty outside `[-500, 500]`.
fn schwefel_term(z: f64, n: f64) -> f64 {
    if z.abs() <= 500.0 {
        z * z.abs().sqrt().sin()
    } else if z > 500.0 {
        let m = 500.0 - z % 500.0;
        m * m.abs().sqrt().sin() - (z - 500.0).powi(2) / (10000.0 * n)
    } else {
        let m = z.abs() % 500.0 - 500.0;
        m * m.abs().sqrt().sin() - (z + 500.0).powi(2) / (10000.0 * n)
    }
}

fn schaffer_f6(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    0.5 + (r2.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseFunction::ALL
            .into_iter()
            .find(|b| b.id() == s)
            .ok_or_else(|| Error::Catalog(s.to_string()))
    }
}

/// The named base function on `[-100, 100]^dim`, optimum 0 at the origin.
pub fn base_function(id: &str, dim: usize) -> Result<ObjectiveFunction> {
    let base: BaseFunction = id.parse()?;
    if dim < base.min_dim() {
        return Err(Error::config(format!(
            "{id} needs at least {} dimensions, got {dim}",
            base.min_dim()
        )));
    }
    let space = SearchSpace::uniform(dim, -DEFAULT_BOUND, DEFAULT_BOUND)?;
    Ok(ObjectiveFunction::new(id, space, move |x| base.eval(x))
        .with_class(base.class())
        .with_description(format!("{id} (base)"))
        .with_optimum(Optimum {
            position: vec![0.0; dim],
            value: 0.0,
        }))
}
