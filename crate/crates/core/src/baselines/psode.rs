//! PSO-DE: a particle swarm step followed by a DE step on the personal
//! bests.
//!
//! PSO step, per particle and per dimension (draws `r_p` then `r_g`):
//!
//! ```text
//! v = w·v + φp·r_p·(pbest − x) + φg·r_g·(gbest − x)
//! ```
//!
//! with `|v_j| <= 0.5·(upper_j − lower_j)`, then `x += v`, repair, evaluate,
//! and replace the personal best on strict improvement. `gbest` is the value
//! at the start of the step. The DE step draws `F` and `CR` once from their
//! ranges and runs rand/1/bin over the personal bests with greedy
//! acceptance. The global best is refreshed after each step. A generation
//! costs `2·NP` evaluations.

use serde::{Deserialize, Serialize};

use crate::benchmarks::ObjectiveFunction;
use crate::de::{binomial_crossover, mutate_rand1, validate_cr, validate_weight};
use crate::domain::{
    best_index, drive, select_greedy, Evaluator, Generational, Individual, Population, RngStream,
    RunResult, SearchSpace, Termination,
};
use crate::error::{Error, Result};
use crate::Optimizer;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoDeParams {
    /// Inertia weight.
    pub w: f64,
    pub phi_p: f64,
    pub phi_g: f64,
    /// Half-open range `[lo, hi)` for the per-generation `F`.
    pub f_range: [f64; 2],
    pub cr_range: [f64; 2],
    pub np: usize,
}

impl Default for PsoDeParams {
    fn default() -> Self {
        PsoDeParams {
            w: 0.7298,
            phi_p: 1.49618,
            phi_g: 1.49618,
            f_range: [0.9, 1.0],
            cr_range: [0.95, 1.0],
            np: 100,
        }
    }
}

impl PsoDeParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("w", self.w), ("phi_p", self.phi_p), ("phi_g", self.phi_g)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::config(format!("PSO-DE {name} must be finite and >= 0, got {v}")));
            }
        }
        let [flo, fhi] = self.f_range;
        let [clo, chi] = self.cr_range;
        if flo > fhi || clo > chi {
            return Err(Error::config("PSO-DE ranges must be given as [low, high]"));
        }
        validate_weight(flo)?;
        validate_weight(fhi)?;
        validate_cr(clo)?;
        validate_cr(chi)?;
        if self.np < 4 {
            return Err(Error::config(format!("PSO-DE needs NP >= 4, got {}", self.np)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    /// Current positions with their fitness.
    pub particles: Vec<Individual>,
    pub velocities: Vec<Vec<f64>>,
    pub personal_best: Vec<Individual>,
    pub global_best: Individual,
}

fn vmax(space: &SearchSpace, j: usize) -> f64 {
    0.5 * space.width(j)
}

/// Uniform positions (all drawn first), then uniform velocities in
/// `±vmax`. Costs `NP` evaluations.
pub fn init_swarm(np: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Swarm {
    let space = eval.space();
    let positions: Vec<Vec<f64>> = (0..np).map(|_| space.sample_uniform(rng)).collect();
    let velocities: Vec<Vec<f64>> = (0..np)
        .map(|_| {
            (0..space.dim())
                .map(|j| rng.uniform_in(-vmax(space, j), vmax(space, j)))
                .collect()
        })
        .collect();
    let particles: Vec<Individual> = positions.into_iter().map(|p| eval.evaluate_position(p)).collect();
    let global_best = particles[best_index(&particles)].clone();
    Swarm {
        personal_best: particles.clone(),
        particles,
        velocities,
        global_best,
    }
}

fn refresh_global(swarm: &mut Swarm) {
    let k = best_index(&swarm.personal_best);
    if swarm.personal_best[k].value() < swarm.global_best.value() {
        swarm.global_best = swarm.personal_best[k].clone();
    }
}

/// The particle swarm half of a generation.
pub fn pso_step(
    swarm: &mut Swarm,
    params: &PsoDeParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<()> {
    let space = eval.space();
    let g = swarm.global_best.position.clone();
    for i in 0..swarm.particles.len() {
        let x = &swarm.particles[i].position;
        let pb = &swarm.personal_best[i].position;
        let v = &mut swarm.velocities[i];
        let mut next = x.clone();
        for j in 0..x.len() {
            let rp = rng.uniform();
            let rg = rng.uniform();
            let limit = vmax(space, j);
            v[j] = (params.w * v[j] + params.phi_p * rp * (pb[j] - x[j]) + params.phi_g * rg * (g[j] - x[j]))
                .clamp(-limit, limit);
            next[j] += v[j];
        }
        space.repair(&mut next);
        let moved = eval.evaluate_position(next);
        if moved.value() < swarm.personal_best[i].value() {
            swarm.personal_best[i] = moved.clone();
        }
        swarm.particles[i] = moved;
    }
    refresh_global(swarm);
    Ok(())
}

/// The DE half of a generation, applied to the personal bests.
pub fn de_step(
    swarm: &mut Swarm,
    params: &PsoDeParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<()> {
    let space = eval.space();
    let f = rng.uniform_in(params.f_range[0], params.f_range[1]);
    let cr = rng.uniform_in(params.cr_range[0], params.cr_range[1]);
    let bests = Population::new(swarm.personal_best.clone());
    let mut next = Vec::with_capacity(bests.len());
    for (i, target) in bests.members.iter().enumerate() {
        let v = mutate_rand1(&bests, i, f, space, rng)?;
        let trial = eval.evaluate_position(binomial_crossover(&v, &target.position, cr, rng)?);
        next.push(select_greedy(target.clone(), trial)?);
    }
    swarm.personal_best = next;
    refresh_global(swarm);
    Ok(())
}

pub fn psode_generation(
    swarm: &mut Swarm,
    params: &PsoDeParams,
    eval: &mut Evaluator<'_>,
    rng: &mut RngStream,
) -> Result<()> {
    params.validate()?;
    pso_step(swarm, params, eval, rng)?;
    de_step(swarm, params, eval, rng)
}

struct PsoDeRun {
    swarm: Swarm,
    params: PsoDeParams,
}

impl Generational for PsoDeRun {
    fn evaluations_per_generation(&self) -> usize {
        2 * self.params.np
    }

    fn step(&mut self, _: usize, _: usize, eval: &mut Evaluator<'_>, rng: &mut RngStream) -> Result<()> {
        psode_generation(&mut self.swarm, &self.params, eval, rng)
    }

    fn best(&self) -> &Individual {
        &self.swarm.global_best
    }
}

pub fn run_psode(
    f: &ObjectiveFunction,
    params: &PsoDeParams,
    termination: &Termination,
    seed: u64,
) -> Result<RunResult> {
    params.validate()?;
    termination.validate()?;
    let mut rng = RngStream::new(seed);
    let mut eval = Evaluator::new(f);
    let swarm = init_swarm(params.np, &mut eval, &mut rng);
    let mut run = PsoDeRun {
        swarm,
        params: *params,
    };
    drive(&mut run, termination, &mut eval, &mut rng, |_, _| Ok(()))
}

impl Optimizer for PsoDeParams {
    fn name(&self) -> &'static str {
        "psode"
    }

    fn run(&self, f: &ObjectiveFunction, termination: &Termination, seed: u64) -> Result<RunResult> {
        run_psode(f, self, termination, seed)
    }
}

#[cfg(test)]
#[allow(clippy::manual_clamp, clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::benchmarks::base_function;
    use proptest::prelude::*;

    fn still_swarm(f: &ObjectiveFunction) -> Swarm {
        let mut eval = Evaluator::new(f);
        let particles: Vec<Individual> = [[1.0, 2.0], [-3.0, 0.5], [4.0, -4.0], [0.5, 0.5]]
            .iter()
            .map(|p| eval.evaluate_position(p.to_vec()))
            .collect();
        Swarm {
            velocities: vec![vec![0.0; 2]; 4],
            personal_best: particles.clone(),
            global_best: particles[3].clone(),
            particles,
        }
    }

    #[test]
    fn zero_coefficients_keep_particles_still() {
        let f = base_function("sphere", 2).unwrap();
        let mut s = still_swarm(&f);
        let before = s.clone();
        let params = PsoDeParams { phi_p: 0.0, phi_g: 0.0, np: 4, ..Default::default() };
        let mut eval = Evaluator::new(&f);
        pso_step(&mut s, &params, &mut eval, &mut RngStream::new(0)).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn social_term_points_at_global_best() {
        let f = base_function("sphere", 2).unwrap();
        let mut s = still_swarm(&f);
        let before = s.clone();
        let params = PsoDeParams { w: 0.0, phi_p: 0.0, phi_g: 1.0, np: 4, ..Default::default() };
        let mut rng = RngStream::new(9);
        let mut tape = rng.clone();
        pso_step(&mut s, &params, &mut Evaluator::new(&f), &mut rng).unwrap();
        let g = &before.global_best.position;
        for i in 0..4 {
            for j in 0..2 {
                let _rp = tape.uniform();
                let rg = tape.uniform();
                let want = rg * (g[j] - before.particles[i].position[j]);
                assert!((s.velocities[i][j] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn velocity_is_clamped() {
        let f = base_function("sphere", 2).unwrap();
        let mut s = still_swarm(&f);
        s.velocities = vec![vec![1e6, -1e6]; 4];
        let params = PsoDeParams { np: 4, ..Default::default() };
        pso_step(&mut s, &params, &mut Evaluator::new(&f), &mut RngStream::new(1)).unwrap();
        assert!(s.velocities.iter().flatten().all(|v| v.abs() <= 100.0));
        assert!(s.particles.iter().all(|p| f.space().contains(&p.position)));
    }

    #[test]
    fn evaluation_cost_per_generation() {
        let f = base_function("sphere", 3).unwrap();
        let params = PsoDeParams { np: 10, ..Default::default() };
        let r = run_psode(&f, &params, &Termination::generations(7), 0).unwrap();
        assert_eq!(r.evaluations, 10 + 7 * 20);
    }

    #[test]
    fn invalid_ranges() {
        assert!(PsoDeParams { f_range: [1.0, 0.9], ..Default::default() }.validate().is_err());
        assert!(PsoDeParams { cr_range: [0.5, 1.5], ..Default::default() }.validate().is_err());
        assert!(PsoDeParams { np: 3, ..Default::default() }.validate().is_err());
    }

    // Straight-line transcription of one generation on d = 2, NP = 5.
    #[test]
    fn one_generation_matches_transcription() {
        let f = base_function("rastrigin", 2).unwrap();
        let params = PsoDeParams { np: 5, ..Default::default() };
        let mut eval = Evaluator::new(&f);
        let mut rng = RngStream::new(21);
        let mut s = init_swarm(5, &mut eval, &mut rng);
        // give the bests some history so the cognitive term is non-zero
        s.personal_best[2] = eval.evaluate_position(vec![0.1, -0.2]);
        s.global_best = s.personal_best[2].clone();

        let ras = |x: [f64; 2]| {
            20.0 + x[0] * x[0] - 10.0 * (2.0 * std::f64::consts::PI * x[0]).cos() + x[1] * x[1]
                - 10.0 * (2.0 * std::f64::consts::PI * x[1]).cos()
        };
        let a2 = |v: &[f64]| [v[0], v[1]];
        let mut x: Vec<[f64; 2]> = s.particles.iter().map(|p| a2(&p.position)).collect();
        let mut vel: Vec<[f64; 2]> = s.velocities.iter().map(|v| a2(v)).collect();
        let mut pb: Vec<[f64; 2]> = s.personal_best.iter().map(|p| a2(&p.position)).collect();
        let mut pf: Vec<f64> = s.personal_best.iter().map(|p| p.fitness.unwrap()).collect();
        let mut gb = a2(&s.global_best.position);
        let mut gf = s.global_best.fitness.unwrap();
        let mut tape = rng.clone();

        let g0 = gb;
        for i in 0..5 {
            for j in 0..2 {
                let rp = tape.uniform();
                let rg = tape.uniform();
                let mut v = 0.7298 * vel[i][j] + 1.49618 * rp * (pb[i][j] - x[i][j]) + 1.49618 * rg * (g0[j] - x[i][j]);
                if v > 100.0 {
                    v = 100.0;
                }
                if v < -100.0 {
                    v = -100.0;
                }
                vel[i][j] = v;
                x[i][j] = (x[i][j] + v).clamp(-100.0, 100.0);
            }
            let fx = ras(x[i]);
            if fx < pf[i] {
                pb[i] = x[i];
                pf[i] = fx;
            }
        }
        for i in 0..5 {
            if pf[i] < gf {
                gf = pf[i];
                gb = pb[i];
            }
        }
        let fw = 0.9 + 0.1 * tape.uniform();
        let cr = 0.95 + 0.05 * tape.uniform();
        let snap = pb.clone();
        let snap_f = pf.clone();
        for i in 0..5 {
            let mut r = [0usize; 3];
            for k in 0..3 {
                loop {
                    let c = tape.index(5);
                    if c != i && !r[..k].contains(&c) {
                        r[k] = c;
                        break;
                    }
                }
            }
            let mut v = [0.0; 2];
            for j in 0..2 {
                v[j] = (snap[r[0]][j] + fw * (snap[r[1]][j] - snap[r[2]][j])).clamp(-100.0, 100.0);
            }
            let k = tape.index(2);
            let mut u = [0.0; 2];
            for j in 0..2 {
                u[j] = if tape.uniform() < cr || j == k { v[j] } else { snap[i][j] };
            }
            let fu = ras(u);
            if fu < snap_f[i] {
                pb[i] = u;
                pf[i] = fu;
            }
        }
        for i in 0..5 {
            if pf[i] < gf {
                gf = pf[i];
                gb = pb[i];
            }
        }

        psode_generation(&mut s, &params, &mut eval, &mut rng).unwrap();
        for i in 0..5 {
            for j in 0..2 {
                assert!((s.particles[i].position[j] - x[i][j]).abs() <= 1e-12);
                assert!((s.velocities[i][j] - vel[i][j]).abs() <= 1e-12);
                assert!((s.personal_best[i].position[j] - pb[i][j]).abs() <= 1e-12);
            }
        }
        assert!((s.global_best.fitness.unwrap() - gf).abs() <= 1e-12);
        assert!((s.global_best.position[0] - gb[0]).abs() <= 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn personal_bests_never_worsen(seed in any::<u64>(), np in 4usize..20) {
            let f = base_function("ackley", 3).unwrap();
            let params = PsoDeParams { np, ..Default::default() };
            let mut eval = Evaluator::new(&f);
            let mut rng = RngStream::new(seed);
            let mut s = init_swarm(np, &mut eval, &mut rng);
            for _ in 0..25 {
                let before: Vec<f64> = s.personal_best.iter().map(|p| p.value()).collect();
                let g = s.global_best.value();
                psode_generation(&mut s, &params, &mut eval, &mut rng).unwrap();
                for (b, p) in before.iter().zip(&s.personal_best) {
                    prop_assert!(p.value() <= *b);
                }
                prop_assert!(s.global_best.value() <= g);
            }
        }
    }
}
