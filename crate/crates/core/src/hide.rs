//! Hierarchy influenced differential evolution.
//!
//! The population is organised as a two-level hierarchy: one global leader
//! `g_L`, `N_l` local leaders, and the effector population. Every member
//! follows its nearest local leader. During the first `HC·G_t` generations
//! trials are built around the global leader,
//!
//! ```text
//! u = g_L + F·(x_L − x_r)
//! ```
//!
//! and afterwards around the member's own leader,
//!
//! ```text
//! u = x_L + F·(x_i − x_r)
//! ```
//!
//! followed by crossover and greedy selection against the generation-start
//! population. After all members are processed each local leader is
//! replaced by the best of itself and its cluster, and the global leader
//! by the best of itself and the local leaders.
//!
//! Leaders are separate points, not population members. They are evaluated
//! once when created and afterwards only ever replaced by evaluated members.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::de::{binomial_crossover, validate_cr, validate_weight};
use crate::domain::{
    drive, select_greedy, Evaluator, Generational, Individual, Population, RngStream, RunResult,
    SearchSpace, Termination,
};
use crate::error::{Error, Result};
use crate::Optimizer;

/// How the trial vector `u` is merged with the target.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossoverMode {
    /// Binomial crossover with rate `CR` and a forced dimension.
    #[default]
    Binomial,
    /// Per-dimension gate on `HC`: keep the target coordinate when a
    /// uniform draw falls below `HC`, otherwise take `u`. `CR` is unused.
    HcGated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HideParams {
    /// Fraction of the generation budget spent in the global phase.
    pub hc: f64,
    pub f: f64,
    pub cr: f64,
    /// Number of local leaders.
    pub n_leaders: usize,
    pub np: usize,
    /// Standard deviation of the normal draws used to place leaders and
    /// members at initialization. `None` means 10% of the mean bound width.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_spread: Option<f64>,
    pub crossover: CrossoverMode,
}

impl Default for HideParams {
    fn default() -> Self {
        HideParams {
            hc: 0.27,
            f: 0.48,
            cr: 0.9,
            n_leaders: 5,
            np: 100,
            init_spread: None,
            crossover: CrossoverMode::Binomial,
        }
    }
}

impl HideParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.hc) {
            return Err(Error::config(format!("HC must lie in [0, 1], got {}", self.hc)));
        }
        validate_weight(self.f)?;
        validate_cr(self.cr)?;
        if self.np < 2 {
            return Err(Error::config(format!(
                "HIDE needs NP >= 2 to draw a partner r != i, got {}",
                self.np
            )));
        }
        if self.n_leaders == 0 || self.n_leaders > self.np {
            return Err(Error::config(format!(
                "number of local leaders must lie in 1..={}, got {}",
                self.np, self.n_leaders
            )));
        }
        if let Some(s) = self.init_spread {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::config(format!("init_spread must be finite and >= 0, got {s}")));
            }
        }
        Ok(())
    }

    pub fn spread_for(&self, space: &SearchSpace) -> f64 {
        self.init_spread.unwrap_or(0.1 * space.mean_width())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Trials built around the global leader.
    Global,
    /// Trials built around each member's local leader.
    Local,
}

/// `Global` while `generation < hc·horizon` (strict), `Local` afterwards.
pub fn phase(generation: usize, horizon: usize, hc: f64) -> Phase {
    if (generation as f64) < hc * horizon as f64 {
        Phase::Global
    } else {
        Phase::Local
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyState {
    pub global_leader: Individual,
    pub local_leaders: Vec<Individual>,
    /// Leader index of each member.
    pub assignment: Vec<usize>,
}

impl HierarchyState {
    /// Members assigned to each leader.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.local_leaders.len()];
        for &a in &self.assignment {
            sizes[a] += 1;
        }
        sizes
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the leader closest to `position` in Euclidean distance; ties go
/// to the lowest index.
pub fn nearest_leader(position: &[f64], leaders: &[Individual]) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, leader) in leaders.iter().enumerate() {
        if leader.dim() != position.len() {
            return Err(Error::Dimension {
                expected: position.len(),
                found: leader.dim(),
            });
        }
        let d = squared_distance(position, &leader.position);
        if best.is_none_or(|(_, b)| d < b) {
            best = Some((k, d));
        }
    }
    best.map(|(k, _)| k)
        .ok_or_else(|| Error::Contract("nearest_leader called with no leaders".into()))
}

pub(crate) fn assign(population: &Population, leaders: &[Individual]) -> Result<Vec<usize>> {
    population
        .members
        .iter()
        .map(|m| nearest_leader(&m.position, leaders))
        .collect()
}

/// Leader around which member `m` is sampled at initialization.
pub fn sampling_leader(member: usize, n_leaders: usize) -> usize {
    member % n_leaders
}

fn sample_around(center: &[f64], spread: f64, space: &SearchSpace, rng: &mut RngStream) -> Vec<f64> {
    let mut x: Vec<f64> = center.iter().map(|c| c + spread * rng.normal()).collect();
    space.repair(&mut x);
    x
}

/// Builds the initial hierarchy: a uniform global leader, local leaders
/// scattered around it, and members scattered round-robin around the
/// local leaders. Costs `1 + N_l + NP` evaluations.
pub fn init_hierarchy(
    params: &HideParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<(HierarchyState, Population)> {
    params.validate()?;
    let space = eval.space();
    let spread = params.spread_for(space);
    let g = space.sample_uniform(rng);
    let leader_positions: Vec<Vec<f64>> = (0..params.n_leaders)
        .map(|_| sample_around(&g, spread, space, rng))
        .collect();
    let member_positions: Vec<Vec<f64>> = (0..params.np)
        .map(|m| {
            let c = sampling_leader(m, params.n_leaders);
            sample_around(&leader_positions[c], spread, space, rng)
        })
        .collect();

    let global_leader = eval.evaluate_position(g);
    let local_leaders: Vec<Individual> = leader_positions
        .into_iter()
        .map(|p| eval.evaluate_position(p))
        .collect();
    let population = Population::new(
        member_positions
            .into_iter()
            .map(|p| eval.evaluate_position(p))
            .collect(),
    );
    let assignment = assign(&population, &local_leaders)?;
    Ok((
        HierarchyState {
            global_leader,
            local_leaders,
            assignment,
        },
        population,
    ))
}

/// Builds member `i`'s trial for generation `generation` of `horizon`.
///
/// Draws the partner `r != i`, forms `u` for the current phase, repairs it
/// into the space, then applies the configured crossover.
#[allow(clippy::too_many_arguments)]
pub fn hide_trial(
    i: usize,
    population: &Population,
    state: &HierarchyState,
    params: &HideParams,
    generation: usize,
    horizon: usize,
    space: &SearchSpace,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let np = population.len();
    if np < 2 {
        return Err(Error::config("HIDE needs at least two members to draw r != i"));
    }
    let r = rng.index_excluding(np, &[i]);
    let xi = &population.members[i].position;
    let xr = &population.members[r].position;
    let leader = &state.local_leaders[state.assignment[i]].position;
    let f = params.f;
    let mut u: Vec<f64> = match phase(generation, horizon, params.hc) {
        Phase::Global => {
            let g = &state.global_leader.position;
            (0..xi.len()).map(|j| g[j] + f * (leader[j] - xr[j])).collect()
        }
        Phase::Local => (0..xi.len()).map(|j| leader[j] + f * (xi[j] - xr[j])).collect(),
    };
    space.repair(&mut u);
    match params.crossover {
        CrossoverMode::Binomial => binomial_crossover(&u, xi, params.cr, rng),
        CrossoverMode::HcGated => Ok(hc_gated_crossover(&u, xi, params.hc, rng)),
    }
}

/// Keeps `x[j]` when a uniform draw is below `hc`, otherwise takes `u[j]`.
pub fn hc_gated_crossover(u: &[f64], x: &[f64], hc: f64, rng: &mut RngStream) -> Vec<f64> {
    u.iter()
        .zip(x)
        .map(|(&uj, &xj)| if rng.uniform() < hc { xj } else { uj })
        .collect()
}

/// Bookkeeping for one generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRecord {
    /// Zero-based index of the generation that was executed.
    pub generation: usize,
    pub phase: Phase,
    /// Trials that replaced their parent.
    pub accepted: usize,
    /// Local leaders replaced by a cluster member.
    pub leaders_replaced: usize,
    pub global_leader_replaced: bool,
}

/// One HIDE generation: assignment, trials, greedy selection, then the
/// leader feedback updates. Leaves `state.assignment` as the partition the
/// leader update used.
#[allow(clippy::too_many_arguments)]
pub fn hide_generation(
    population: &mut Population,
    state: &mut HierarchyState,
    params: &HideParams,
    generation: usize,
    horizon: usize,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<GenerationRecord> {
    params.validate()?;
    population.require_evaluated()?;
    if state.local_leaders.len() != params.n_leaders {
        return Err(Error::Contract(format!(
            "state holds {} local leaders, params expect {}",
            state.local_leaders.len(),
            params.n_leaders
        )));
    }
    let space = eval.space();
    state.assignment = assign(population, &state.local_leaders)?;

    let mut next = Vec::with_capacity(population.len());
    let mut accepted = 0;
    for (i, target) in population.members.iter().enumerate() {
        let trial = hide_trial(i, population, state, params, generation, horizon, space, rng)?;
        let trial = eval.evaluate_position(trial);
        let kept = select_greedy(target.clone(), trial)?;
        if kept.position != target.position || kept.fitness != target.fitness {
            accepted += 1;
        }
        next.push(kept);
    }
    population.members = next;
    population.generation += 1;

    let mut replaced = vec![false; state.local_leaders.len()];
    for (i, member) in population.members.iter().enumerate() {
        let c = state.assignment[i];
        if member.value() < state.local_leaders[c].value() {
            state.local_leaders[c] = member.clone();
            replaced[c] = true;
        }
    }
    let leaders_replaced = replaced.iter().filter(|&&r| r).count();
    let mut global_leader_replaced = false;
    for leader in &state.local_leaders {
        if leader.value() < state.global_leader.value() {
            state.global_leader = leader.clone();
            global_leader_replaced = true;
        }
    }
    Ok(GenerationRecord {
        generation,
        phase: phase(generation, horizon, params.hc),
        accepted,
        leaders_replaced,
        global_leader_replaced,
    })
}

/// Everything a generation observer can see.
pub struct HideView<'s> {
    pub population: &'s Population,
    pub state: &'s HierarchyState,
    pub record: &'s GenerationRecord,
}

struct HideRun {
    population: Population,
    state: HierarchyState,
    params: HideParams,
    record: Option<GenerationRecord>,
}

impl Generational for HideRun {
    fn evaluations_per_generation(&self) -> usize {
        self.params.np
    }

    fn step(&mut self, generation: usize, horizon: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
        let record = hide_generation(
            &mut self.population,
            &mut self.state,
            &self.params,
            generation,
            horizon,
            eval,
            rng,
        )?;
        self.record = Some(record);
        Ok(())
    }

    fn best(&self) -> &Individual {
        // The global leader dominates everything only after the first
        // feedback update, so compare explicitly.
        std::iter::once(&self.state.global_leader)
            .chain(&self.state.local_leaders)
            .chain(&self.population.members)
            .fold(&self.state.global_leader, |best, x| {
                if x.value() < best.value() {
                    x
                } else {
                    best
                }
            })
    }
}

pub fn run_hide(
    f: &ObjectiveFunction,
    params: &HideParams,
    termination: &Termination,
    seed: u64,
) -> Result<RunResult> {
    run_hide_observed(f, params, termination, seed, |_| Ok(()))
}

/// [`run_hide`] with a callback after every generation.
pub fn run_hide_observed(
    f: &ObjectiveFunction,
    params: &HideParams,
    termination: &Termination,
    seed: u64,
    mut observer: impl FnMut(&HideView<'_>) -> Result<()>,
) -> Result<RunResult> {
    params.validate()?;
    termination.validate()?;
    let mut rng = RngStream::new(seed);
    let mut eval = Evaluator::new(f);
    let (state, population) = init_hierarchy(params, &mut eval, &mut rng)?;
    let mut run = HideRun {
        population,
        state,
        params: *params,
        record: None,
    };
    drive(&mut run, termination, &mut eval, &mut rng, |r, _| {
        let record = r.record.as_ref().expect("record set by step");
        observer(&HideView {
            population: &r.population,
            state: &r.state,
            record,
        })
    })
}

/// One line of a hierarchy dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyRecord {
    pub generation: usize,
    pub phase: Phase,
    pub global_leader: Individual,
    pub local_leaders: Vec<Individual>,
    pub assignment: Vec<usize>,
}

/// Runs HIDE and writes one JSON object per generation to `out`.
pub fn run_hide_dump(
    f: &ObjectiveFunction,
    params: &HideParams,
    termination: &Termination,
    seed: u64,
    out: &mut dyn Write,
) -> Result<RunResult> {
    run_hide_observed(f, params, termination, seed, |view| {
        let rec = HierarchyRecord {
            generation: view.record.generation,
            phase: view.record.phase,
            global_leader: view.state.global_leader.clone(),
            local_leaders: view.state.local_leaders.clone(),
            assignment: view.state.assignment.clone(),
        };
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")
            .map_err(|e| Error::io("hierarchy dump", e))
    })
}

impl Optimizer for HideParams {
    fn name(&self) -> &'static str {
        "hide"
    }

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult> {
        run_hide(f, self, termination, seed)
    }
}
