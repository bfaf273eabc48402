//! Classical differential evolution, DE/rand/1/bin.
//!
//! Each generation builds one trial per member from a snapshot of the
//! generation-start population (synchronous update): three distinct donors
//! other than the target, `v = x_r1 + F·(x_r2 − x_r3)`, boundary repair,
//! binomial crossover with the target, greedy selection.
//!
//! Random draws per member, in order: `r1`, `r2`, `r3` (rejection sampling
//! over `0..NP`), then the crossover's forced index `k` and one uniform per
//! dimension.

use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::domain::{
    drive, select_greedy, Evaluator, Generational, Individual, Population, RngStream, RunResult,
    SearchSpace, Termination,
};
use crate::error::{Error, Result};
use crate::Optimizer;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeParams {
    /// Differential weight.
    pub f: f64,
    /// Crossover probability.
    pub cr: f64,
    /// Population size.
    pub np: usize,
}

impl Default for DeParams {
    fn default() -> Self {
        DeParams {
            f: 0.5,
            cr: 0.9,
            np: 100,
        }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<()> {
        validate_weight(self.f)?;
        validate_cr(self.cr)?;
        if self.np < 4 {
            return Err(Error::config(format!(
                "DE needs NP >= 4 to draw three distinct donors, got {}",
                self.np
            )));
        }
        Ok(())
    }
}

/// `F` in `[0, 2]`; values above 1 are legal but unusual.
pub(crate) fn validate_weight(f: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&f) {
        return Err(Error::config(format!("differential weight F must lie in [0, 2], got {f}")));
    }
    if f > 1.0 {
        log::warn!("differential weight F = {f} is above the usual [0, 1] range");
    }
    Ok(())
}

pub(crate) fn validate_cr(cr: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&cr) {
        return Err(Error::config(format!("crossover probability must lie in [0, 1], got {cr}")));
    }
    Ok(())
}

/// Three mutually distinct indices in `0..np`, all different from `target`.
pub fn draw_donors(np: usize, target: usize, rng: &mut RngStream) -> Result<[usize; 3]> {
    if np < 4 {
        return Err(Error::config(format!(
            "need at least 4 members to draw three distinct donors, got {np}"
        )));
    }
    let r1 = rng.index_excluding(np, &[target]);
    let r2 = rng.index_excluding(np, &[target, r1]);
    let r3 = rng.index_excluding(np, &[target, r1, r2]);
    Ok([r1, r2, r3])
}

/// `x_r1 + F·(x_r2 − x_r3)` repaired into the space.
pub fn mutate_rand1(
    population: &Population,
    target: usize,
    f: f64,
    space: &SearchSpace,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let [r1, r2, r3] = draw_donors(population.len(), target, rng)?;
    let m = &population.members;
    let mut v: Vec<f64> = m[r1]
        .position
        .iter()
        .zip(m[r2].position.iter().zip(&m[r3].position))
        .map(|(a, (b, c))| a + f * (b - c))
        .collect();
    space.repair(&mut v);
    Ok(v)
}

/// Binomial crossover of `mutant` into `target`.
///
/// Draws a forced index `k` uniformly, then one uniform per dimension; a
/// coordinate comes from the mutant when its uniform is below `cr` or it is
/// `k`. With `cr >= 1` the output is the mutant and nothing is drawn.
pub fn binomial_crossover(
    mutant: &[f64],
    target: &[f64],
    cr: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if mutant.len() != target.len() {
        return Err(Error::Dimension {
            expected: target.len(),
            found: mutant.len(),
        });
    }
    if mutant.is_empty() {
        return Err(Error::Contract("crossover of empty vectors".into()));
    }
    if cr >= 1.0 {
        return Ok(mutant.to_vec());
    }
    let k = rng.index(mutant.len());
    Ok(mutant
        .iter()
        .zip(target)
        .enumerate()
        .map(|(j, (&u, &x))| if rng.uniform() < cr || j == k { u } else { x })
        .collect())
}

/// One synchronous DE generation.
pub fn de_generation(
    population: &mut Population,
    params: &DeParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<()> {
    params.validate()?;
    population.require_evaluated()?;
    let space = eval.space();
    let mut next = Vec::with_capacity(population.len());
    for (i, target) in population.members.iter().enumerate() {
        let v = mutate_rand1(population, i, params.f, space, rng)?;
        let trial = binomial_crossover(&v, &target.position, params.cr, rng)?;
        let trial = eval.evaluate_position(trial);
        next.push(select_greedy(target.clone(), trial)?);
    }
    population.members = next;
    population.generation += 1;
    Ok(())
}

/// `np` uniform points in the space, evaluated in order.
pub(crate) fn uniform_population(np: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Population {
    let space = eval.space();
    let members = (0..np)
        .map(|_| {
            let x = space.sample_uniform(rng);
            eval.evaluate_position(x)
        })
        .collect();
    Population::new(members)
}

struct DeState {
    population: Population,
    params: DeParams,
}

impl Generational for DeState {
    fn evaluations_per_generation(&self) -> usize {
        self.params.np
    }

    fn step(&mut self, _: usize, _: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
        de_generation(&mut self.population, &self.params, eval, rng)
    }

    fn best(&self) -> &Individual {
        self.population.best()
    }
}

/// Runs DE from a uniform initial population. Uses `NP` evaluations to
/// initialize and `NP` per generation.
pub fn run_de(
    f: &ObjectiveFunction,
    params: &DeParams,
    termination: &Termination,
    seed: u64,
) -> Result<RunResult> {
    params.validate()?;
    termination.validate()?;
    let mut rng = RngStream::new(seed);
    let mut eval = Evaluator::new(f);
    let population = uniform_population(params.np, &mut eval, &mut rng);
    let mut state = DeState {
        population,
        params: *params,
    };
    drive(&mut state, termination, &mut eval, &mut rng, |_, _| Ok(()))
}

impl Optimizer for DeParams {
    fn name(&self) -> &'static str {
        "de"
    }

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult> {
        run_de(f, self, termination, seed)
    }
}
