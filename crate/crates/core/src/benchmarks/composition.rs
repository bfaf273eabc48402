use std::sync::Arc;

use super::base::DEFAULT_BOUND;
use super::{FunctionClass, ObjectiveFunction, Optimum};
use crate::domain::SearchSpace;
use crate::error::{Error, Result};

/// One term of a composition. `function` is expected to be already shifted
/// to `shift` (its optimum sits there); `shift` drives the mixture weight.
#[derive(Debug, Clone)]
pub struct CompositionComponent {
    pub function: ObjectiveFunction,
    pub shift: Vec<f64>,
    pub sigma: f64,
    pub lambda: f64,
    pub bias: f64,
}

#[derive(Debug, Clone)]
pub struct CompositionSpec {
    pub components: Vec<CompositionComponent>,
}

/// Distance-based weighting of a composition's components.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    shifts: Vec<Vec<f64>>,
    sigmas: Vec<f64>,
}

impl Mixture {
    pub fn weights(&self, x: &[f64]) -> Vec<f64> {
        composition_weights(x, &self.shifts, &self.sigmas)
    }

    pub fn shifts(&self) -> &[Vec<f64>] {
        &self.shifts
    }
}

/// Normalized CEC mixture weights
/// `w_i ∝ exp(−‖x−o_i‖² / (2·D·σ_i²)) / ‖x−o_i‖`.
///
/// A point sitting exactly on a shift gives that component all the weight
/// (the first such component if shifts repeat). If every raw weight
/// underflows, the weights are uniform.
pub fn composition_weights(x: &[f64], shifts: &[Vec<f64>], sigmas: &[f64]) -> Vec<f64> {
    let n = shifts.len();
    let dim = x.len() as f64;
    let mut w = Vec::with_capacity(n);
    for (o, sigma) in shifts.iter().zip(sigmas) {
        let d2: f64 = x.iter().zip(o).map(|(a, b)| (a - b) * (a - b)).sum();
        if d2 == 0.0 {
            let mut one_hot = vec![0.0; n];
            one_hot[w.len()] = 1.0;
            return one_hot;
        }
        w.push((-d2 / (2.0 * dim * sigma * sigma)).exp() / d2.sqrt());
    }
    let total: f64 = w.iter().sum();
    if total == 0.0 {
        return vec![1.0 / n as f64; n];
    }
    w.iter().map(|v| v / total).collect()
}

/// `Σ ŵ_i·(λ_i·f_i(x) + bias_i) + bias`.
///
/// The declared optimum is the shift of the lowest-bias component.
pub fn make_composition(spec: &CompositionSpec, bias: f64) -> Result<ObjectiveFunction> {
    let comps = &spec.components;
    if comps.len() < 2 {
        return Err(Error::Construction("composition needs at least two components".into()));
    }
    let dim = comps[0].shift.len();
    for (i, c) in comps.iter().enumerate() {
        if c.shift.len() != dim || c.function.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: if c.shift.len() != dim { c.shift.len() } else { c.function.dim() },
            });
        }
        if !(c.sigma > 0.0) || !(c.lambda > 0.0) {
            return Err(Error::Construction(format!(
                "component {i}: sigma and lambda must be positive"
            )));
        }
        if comps[..i].iter().any(|p| p.shift == c.shift) {
            return Err(Error::Construction(format!(
                "component {i} duplicates an earlier shift"
            )));
        }
    }

    let mixture = Arc::new(Mixture {
        shifts: comps.iter().map(|c| c.shift.clone()).collect(),
        sigmas: comps.iter().map(|c| c.sigma).collect(),
    });
    let terms: Vec<(ObjectiveFunction, f64, f64)> = comps
        .iter()
        .map(|c| (c.function.clone(), c.lambda, c.bias))
        .collect();
    let weights = Arc::clone(&mixture);
    let eval = move |x: &[f64]| {
        let w = weights.weights(x);
        let mut total = 0.0;
        for (wi, (f, lambda, b)) in w.iter().zip(&terms) {
            // exact zeros contribute nothing; skip the component evaluation
            if *wi != 0.0 {
                total += wi * (lambda * f.eval(x) + b);
            }
        }
        total + bias
    };

    let lead = (0..comps.len())
        .min_by(|&a, &b| comps[a].bias.total_cmp(&comps[b].bias))
        .unwrap();
    let optimum = comps[lead].function.optimum().map(|opt| Optimum {
        position: comps[lead].shift.clone(),
        value: comps[lead].lambda * opt.value + comps[lead].bias + bias,
    });
    let description = format!(
        "composition[{}]",
        comps
            .iter()
            .map(|c| c.function.description().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let transforms = comps
        .iter()
        .flat_map(|c| c.function.transforms().iter().cloned())
        .collect();
    let space = SearchSpace::uniform(dim, -DEFAULT_BOUND, DEFAULT_BOUND)?;
    let mut f = ObjectiveFunction::new("composition", space, eval)
        .with_class(FunctionClass::Composition)
        .with_description(description)
        .with_bias(bias)
        .with_transforms(transforms)
        .with_mixture(mixture);
    if let Some(opt) = optimum {
        f = f.with_optimum(opt);
    }
    Ok(f)
}
