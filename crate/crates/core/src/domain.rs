//! Shared model: search spaces, individuals, populations, the seeded random
//! stream, termination criteria and run results.
//!
//! Everything here is minimization. Callers that want to maximize negate
//! their objective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::error::{Error, Result};

/// How out-of-bounds coordinates are repaired.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPolicy {
    /// Move to the nearest bound.
    #[default]
    Clamp,
    /// Mirror the overshoot back into the box. Overshoots larger than the
    /// box width fall back to clamping.
    Reflect,
}

/// Box-bounded continuous domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    boundary: BoundaryPolicy,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::config("search space needs at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::Dimension {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            // also rejects NaN bounds
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::config(format!(
                    "dimension {j}: lower bound {lo} must be finite and below upper bound {hi}"
                )));
            }
        }
        Ok(SearchSpace {
            lower,
            upper,
            boundary: BoundaryPolicy::Clamp,
        })
    }

    /// `[lo, hi]^dim`.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        SearchSpace::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn with_boundary(mut self, boundary: BoundaryPolicy) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        self.boundary
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn mean_width(&self) -> f64 {
        (0..self.dim()).map(|j| self.width(j)).sum::<f64>() / self.dim() as f64
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dim()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    pub fn check_dim(&self, position: &[f64]) -> Result<()> {
        if position.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim(),
                found: position.len(),
            })
        }
    }

    /// Brings `position` back into the box according to the space's
    /// boundary policy. In-bounds coordinates are never touched.
    pub fn repair(&self, position: &mut [f64]) {
        debug_assert_eq!(position.len(), self.dim());
        for (j, x) in position.iter_mut().enumerate() {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            if *x >= lo && *x <= hi {
                continue;
            }
            // NaN coordinates land on the lower bound.
            let nearest = if *x > hi { hi } else { lo };
            *x = match self.boundary {
                BoundaryPolicy::Clamp => nearest,
                BoundaryPolicy::Reflect => {
                    let mirrored = 2.0 * nearest - *x;
                    if mirrored >= lo && mirrored <= hi {
                        mirrored
                    } else {
                        nearest
                    }
                }
            };
        }
    }

    /// A point drawn uniformly from the box, one draw per dimension in
    /// index order.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dim())
            .map(|j| rng.uniform_in(self.lower[j], self.upper[j]))
            .collect()
    }
}

/// Clamps every coordinate to its nearest bound, independent of the
/// space's boundary policy.
pub fn clamp_to_bounds(position: &[f64], space: &SearchSpace) -> Result<Vec<f64>> {
    space.check_dim(position)?;
    Ok(position
        .iter()
        .zip(space.lower().iter().zip(space.upper()))
        .map(|(&x, (&lo, &hi))| if x < lo { lo } else if x > hi { hi } else { x })
        .collect())
}

/// A position with an optional cached objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub position: Vec<f64>,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn unevaluated(position: Vec<f64>) -> Self {
        Individual {
            position,
            fitness: None,
        }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Individual {
            position,
            fitness: Some(fitness),
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_some()
    }

    pub fn dim(&self) -> usize {
        self.position.len()
    }

    /// Fitness of an individual the caller knows to be evaluated.
    pub(crate) fn value(&self) -> f64 {
        self.fitness
            .expect("algorithm state holds only evaluated individuals")
    }
}

/// Keeps the trial only if it is strictly better; ties keep the incumbent.
pub fn select_greedy(current: Individual, trial: Individual) -> Result<Individual> {
    let (Some(cur), Some(tri)) = (current.fitness, trial.fitness) else {
        return Err(Error::Contract(
            "greedy selection needs two evaluated individuals".into(),
        ));
    };
    if current.dim() != trial.dim() {
        return Err(Error::Dimension {
            expected: current.dim(),
            found: trial.dim(),
        });
    }
    Ok(if tri < cur { trial } else { current })
}

/// Index of the first member with the lowest fitness.
pub(crate) fn best_index(members: &[Individual]) -> usize {
    let mut best = 0;
    for (i, m) in members.iter().enumerate().skip(1) {
        if m.value() < members[best].value() {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: usize,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Population {
            members,
            generation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_evaluated(&self) -> bool {
        self.members.iter().all(Individual::is_evaluated)
    }

    /// First member with the lowest fitness. Panics on an empty or
    /// unevaluated population.
    pub fn best(&self) -> &Individual {
        &self.members[best_index(&self.members)]
    }

    pub(crate) fn require_evaluated(&self) -> Result<()> {
        if self.is_evaluated() {
            Ok(())
        } else {
            Err(Error::Contract("population has unevaluated members".into()))
        }
    }
}

/// Seeded pseudo-random stream backed by ChaCha8.
///
/// The generator is fully specified and platform independent, so identical
/// seeds give identical draws everywhere. Integer draws go through `u64`
/// to avoid any dependence on the width of `usize`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream sharing a seed, e.g. one per suite function.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot draw an index from an empty range");
        self.rng.random_range(0..n as u64) as usize
    }

    /// Standard normal deviate.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform index in `0..n` different from every entry of `exclude`,
    /// drawn by rejection.
    pub fn index_excluding(&mut self, n: usize, exclude: &[usize]) -> usize {
        debug_assert!(exclude.iter().filter(|&&e| e < n).count() < n);
        loop {
            let r = self.index(n);
            if !exclude.contains(&r) {
                return r;
            }
        }
    }
}

/// When a run stops. A run halts at the first criterion met; at least one
/// of the two budget criteria must be present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Termination {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_generations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_evaluations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_fitness: Option<f64>,
}

impl Default for Termination {
    fn default() -> Self {
        Termination::generations(1000)
    }
}

impl Termination {
    pub fn generations(max_generations: usize) -> Self {
        Termination {
            max_generations: Some(max_generations),
            max_evaluations: None,
            target_fitness: None,
        }
    }

    pub fn evaluations(max_evaluations: usize) -> Self {
        Termination {
            max_generations: None,
            max_evaluations: Some(max_evaluations),
            target_fitness: None,
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_fitness = Some(target);
        self
    }

    pub fn validate(&self) -> Result<()> {
        match (self.max_generations, self.max_evaluations) {
            (None, None) => Err(Error::config(
                "termination needs max_generations or max_evaluations",
            )),
            (Some(0), _) => Err(Error::config("max_generations must be positive")),
            (_, Some(0)) => Err(Error::config("max_evaluations must be positive")),
            _ => Ok(()),
        }
    }

    /// The generation horizon `G_t` known before the run starts. An
    /// evaluation budget converts to `budget / evaluations_per_generation`.
    pub fn generation_budget(&self, evaluations_per_generation: usize) -> Result<usize> {
        self.validate()?;
        let from_evals = self
            .max_evaluations
            .map(|e| e / evaluations_per_generation.max(1));
        let g = match (self.max_generations, from_evals) {
            (Some(g), Some(e)) => g.min(e),
            (Some(g), None) => g,
            (None, Some(e)) => e,
            (None, None) => unreachable!(),
        };
        if g == 0 {
            return Err(Error::config(
                "evaluation budget is smaller than one generation",
            ));
        }
        Ok(g)
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Individual,
    /// Best-so-far fitness: entry 0 after initialization, entry `g` after
    /// generation `g`.
    pub trace: Vec<f64>,
    pub generations: usize,
    pub evaluations: usize,
    /// Objective calls that returned a non-finite value.
    pub faults: usize,
    pub seed: u64,
}

impl RunResult {
    pub fn best_fitness(&self) -> f64 {
        self.best.value()
    }
}

/// Counts objective calls and records non-finite results.
#[derive(Debug)]
pub struct Evaluator<'a> {
    function: &'a ObjectiveFunction,
    evaluations: usize,
    faults: usize,
    best_seen: f64,
}

impl<'a> Evaluator<'a> {
    pub fn new(function: &'a ObjectiveFunction) -> Self {
        Evaluator {
            function,
            evaluations: 0,
            faults: 0,
            best_seen: f64::INFINITY,
        }
    }

    pub fn function(&self) -> &'a ObjectiveFunction {
        self.function
    }

    pub fn space(&self) -> &'a SearchSpace {
        self.function.space()
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn faults(&self) -> usize {
        self.faults
    }

    /// Lowest fitness returned so far over every call.
    pub fn best_seen(&self) -> f64 {
        self.best_seen
    }

    /// Evaluates the individual. A non-finite objective value is stored as
    /// `+inf`, so greedy selection never accepts it, and counted as a fault.
    pub fn evaluate(&mut self, mut individual: Individual) -> Individual {
        debug_assert!(self.space().contains(&individual.position));
        let mut value = self.function.eval(&individual.position);
        self.evaluations += 1;
        if !value.is_finite() {
            if self.faults == 0 {
                log::warn!(
                    "{}: non-finite objective value {value} at evaluation {}; treating as +inf",
                    self.function.id(),
                    self.evaluations
                );
            }
            self.faults += 1;
            value = f64::INFINITY;
        }
        if value < self.best_seen {
            self.best_seen = value;
        }
        individual.fitness = Some(value);
        individual
    }

    pub fn evaluate_position(&mut self, position: Vec<f64>) -> Individual {
        self.evaluate(Individual::unevaluated(position))
    }
}

/// State of a generational optimizer that [`drive`] can step.
pub(crate) trait Generational {
    fn evaluations_per_generation(&self) -> usize;

    fn step(
        &mut self,
        generation: usize,
        horizon: usize,
        eval: &mut Evaluator<'_>,
        rng: &mut RngStream,
    ) -> Result<()>;

    /// Best point held by the state.
    fn best(&self) -> &Individual;
}

/// Runs generations until the termination criteria are met, recording the
/// best-so-far trace. `observe` sees the state after every generation.
pub(crate) fn drive<G: Generational>(
    state: &mut G,
    termination: &Termination,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
    mut observe: impl FnMut(&G, usize) -> Result<()>,
) -> Result<RunResult> {
    let per_generation = state.evaluations_per_generation();
    let horizon = termination.generation_budget(per_generation)?;
    let mut trace = Vec::with_capacity(horizon + 1);
    trace.push(state.best().value());
    let mut generation = 0;
    while generation < horizon {
        if termination
            .target_fitness
            .is_some_and(|t| state.best().value() <= t)
        {
            break;
        }
        if termination
            .max_evaluations
            .is_some_and(|max| eval.evaluations() + per_generation > max)
        {
            break;
        }
        state.step(generation, horizon, eval, rng)?;
        generation += 1;
        trace.push(state.best().value());
        observe(state, generation)?;
    }
    Ok(RunResult {
        best: state.best().clone(),
        trace,
        generations: generation,
        evaluations: eval.evaluations(),
        faults: eval.faults(),
        seed: rng.seed(),
    })
}
