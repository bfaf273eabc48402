//! JADE: adaptive DE with current-to-pbest/1 mutation and an optional
//! archive of replaced parents.
//!
//! For each member, in draw order:
//!
//! - `CR_i ~ N(μCR, 0.1)` clipped to `[0, 1]`;
//! - `F_i ~ Cauchy(μF, 0.1)`, redrawn while `<= 0`, capped at 1;
//! - `pbest` uniform among the `max(1, round(p·NP))` best members;
//! - `r1` uniform in the population, `r1 != i`;
//! - `r2` uniform in population ∪ archive, different from `i` and `r1`;
//! - binomial crossover.
//!
//! `v = x_i + F_i·(x_pbest − x_i) + F_i·(x_r1 − x̃_r2)` is repaired into the
//! space before crossover. Selection is synchronous and strict. Parents
//! beaten by their trial enter the archive after the generation; the archive
//! is then cut back to `NP` entries by removing random ones. Successful
//! `CR_i` and `F_i` move `μCR` towards their mean and `μF` towards their
//! Lehmer mean at rate `c`.

use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::de::{binomial_crossover, uniform_population};
use crate::domain::{
    drive, select_greedy, Evaluator, Generational, Individual, Population, RngStream, RunResult,
    Termination,
};
use crate::error::{Error, Result};
use crate::Optimizer;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JadeParams {
    /// Fraction of the population eligible as `pbest`.
    pub p: f64,
    /// Adaptation rate of `μF` and `μCR`.
    pub c: f64,
    pub np: usize,
    pub archive: bool,
}

impl Default for JadeParams {
    fn default() -> Self {
        JadeParams {
            p: 0.05,
            c: 0.1,
            np: 100,
            archive: true,
        }
    }
}

impl JadeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::config(format!("JADE p must lie in (0, 1], got {}", self.p)));
        }
        if !(0.0..=1.0).contains(&self.c) {
            return Err(Error::config(format!("JADE c must lie in [0, 1], got {}", self.c)));
        }
        if self.np < 5 {
            return Err(Error::config(format!("JADE needs NP >= 5, got {}", self.np)));
        }
        Ok(())
    }

    pub fn pbest_pool(&self) -> usize {
        ((self.p * self.np as f64).round() as usize).clamp(1, self.np)
    }
}

/// Adaptive state carried between generations.
#[derive(Debug, Clone, PartialEq)]
pub struct JadeState {
    pub mu_f: f64,
    pub mu_cr: f64,
    pub archive: Vec<Vec<f64>>,
}

impl Default for JadeState {
    fn default() -> Self {
        JadeState {
            mu_f: 0.5,
            mu_cr: 0.5,
            archive: Vec::new(),
        }
    }
}

pub(crate) fn draw_cr(mu_cr: f64, rng: &mut RngStream) -> f64 {
    (mu_cr + 0.1 * rng.normal()).clamp(0.0, 1.0)
}

pub(crate) fn draw_f(mu_f: f64, rng: &mut RngStream) -> f64 {
    loop {
        let f = mu_f + 0.1 * (std::f64::consts::PI * (rng.uniform() - 0.5)).tan();
        if f > 0.0 {
            return f.min(1.0);
        }
    }
}

/// `Σ F² / Σ F`.
pub fn lehmer_mean(values: &[f64]) -> f64 {
    let sum: f64 = values.iter().sum();
    values.iter().map(|v| v * v).sum::<f64>() / sum
}

/// One JADE generation.
pub fn jade_generation(
    population: &mut Population,
    adaptive: &mut JadeState,
    params: &JadeParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<()> {
    params.validate()?;
    population.require_evaluated()?;
    let np = population.len();
    if np < 5 {
        return Err(Error::config(format!("JADE needs NP >= 5, got {np}")));
    }
    let space = eval.space();
    let members = &population.members;
    let mut order: Vec<usize> = (0..np).collect();
    order.sort_by(|&a, &b| members[a].value().total_cmp(&members[b].value()));
    let pool = params.pbest_pool().min(np);

    let mut next = Vec::with_capacity(np);
    let mut s_cr = Vec::new();
    let mut s_f = Vec::new();
    let mut replaced = Vec::new();
    for (i, target) in members.iter().enumerate() {
        let cr = draw_cr(adaptive.mu_cr, rng);
        let f = draw_f(adaptive.mu_f, rng);
        let pbest = order[rng.index(pool)];
        let r1 = rng.index_excluding(np, &[i]);
        let r2 = rng.index_excluding(np + adaptive.archive.len(), &[i, r1]);
        let x = &target.position;
        let xp = &members[pbest].position;
        let x1 = &members[r1].position;
        let x2 = if r2 < np {
            &members[r2].position
        } else {
            &adaptive.archive[r2 - np]
        };
        let mut v: Vec<f64> = (0..x.len())
            .map(|j| x[j] + f * (xp[j] - x[j]) + f * (x1[j] - x2[j]))
            .collect();
        space.repair(&mut v);
        let trial = eval.evaluate_position(binomial_crossover(&v, x, cr, rng)?);
        let kept = select_greedy(target.clone(), trial)?;
        if kept.value() < target.value() {
            s_cr.push(cr);
            s_f.push(f);
            replaced.push(target.position.clone());
        }
        next.push(kept);
    }
    population.members = next;
    population.generation += 1;

    if params.archive {
        adaptive.archive.extend(replaced);
        while adaptive.archive.len() > np {
            let k = rng.index(adaptive.archive.len());
            adaptive.archive.swap_remove(k);
        }
    }
    if !s_cr.is_empty() {
        let c = params.c;
        adaptive.mu_cr = (1.0 - c) * adaptive.mu_cr + c * s_cr.iter().sum::<f64>() / s_cr.len() as f64;
        adaptive.mu_f = (1.0 - c) * adaptive.mu_f + c * lehmer_mean(&s_f);
    }
    Ok(())
}

struct JadeRun {
    population: Population,
    adaptive: JadeState,
    params: JadeParams,
}

impl Generational for JadeRun {
    fn evaluations_per_generation(&self) -> usize {
        self.params.np
    }

    fn step(&mut self, _: usize, _: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
        jade_generation(&mut self.population, &mut self.adaptive, &self.params, eval, rng)
    }

    fn best(&self) -> &Individual {
        self.population.best()
    }
}

pub fn run_jade(
    f: &ObjectiveFunction,
    params: &JadeParams,
    termination: &Termination,
    seed: u64,
) -> Result<RunResult> {
    params.validate()?;
    termination.validate()?;
    let mut rng = RngStream::new(seed);
    let mut eval = Evaluator::new(f);
    let population = uniform_population(params.np, &mut eval, &mut rng);
    let mut run = JadeRun {
        population,
        adaptive: JadeState::default(),
        params: *params,
    };
    drive(&mut run, termination, &mut eval, &mut rng, |_, _| Ok(()))
}

impl Optimizer for JadeParams {
    fn name(&self) -> &'static str {
        "jade"
    }

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult> {
        run_jade(f, self, termination, seed)
    }
}
