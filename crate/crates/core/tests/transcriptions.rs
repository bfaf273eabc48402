mod common;

use common::*;
use hide::benchmarks::base_function;
use hide::de::{run_de, DeParams};
use hide::hide::{run_hide_observed, HideParams};
use hide::{Individual, Termination};

#[test]
fn de_three_generations_match_reference() {
    let f = base_function("rastrigin", 2).unwrap();
    let params = DeParams { np: 4, ..Default::default() };
    for seed in [1, 2, 3] {
        let r = run_de(&f, &params, &Termination::generations(3), seed).unwrap();
        let want = reference_de(seed, 2, 4, 0.5, 0.9, 3, true, rastrigin);
        assert_eq!(r.trace.len(), want.best.len());
        for (a, b) in r.trace.iter().zip(&want.best) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
        let best = want.fitness.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((r.best_fitness() - best).abs() <= 1e-12);
    }
}

#[test]
fn de_with_full_crossover_is_mutation_plus_selection() {
    let f = base_function("sphere", 5).unwrap();
    let params = DeParams { np: 12, cr: 1.0, ..Default::default() };
    let r = run_de(&f, &params, &Termination::generations(40), 9).unwrap();
    let want = reference_de(9, 5, 12, 0.5, 1.0, 40, false, sphere);
    assert_eq!(r.trace, want.best);
}

#[test]
fn hide_five_generations_match_reference() {
    let f = base_function("rastrigin", 2).unwrap();
    let params = HideParams { np: 20, n_leaders: 2, ..Default::default() };
    for seed in [4, 5] {
        let mut last: Option<(Vec<Individual>, Vec<Individual>, Individual)> = None;
        run_hide_observed(&f, &params, &Termination::generations(5), seed, |v| {
            last = Some((v.population.members.clone(), v.state.local_leaders.clone(), v.state.global_leader.clone()));
            Ok(())
        })
        .unwrap();
        let (members, leaders, global) = last.unwrap();
        let want = reference_hide(seed, 2, 20, 2, 0.27, 0.48, 0.9, 5, 5, rastrigin);
        let pos: Vec<Vec<f64>> = members.iter().map(|m| m.position.clone()).collect();
        assert!(max_abs_diff(&pos, &want.positions) <= 1e-12);
        for (m, w) in members.iter().zip(&want.fitness) {
            assert!((m.fitness.unwrap() - w).abs() <= 1e-12);
        }
        let lp: Vec<Vec<f64>> = leaders.iter().map(|m| m.position.clone()).collect();
        assert!(max_abs_diff(&lp, &want.leaders) <= 1e-12);
        assert!(max_abs_diff(&[global.position], &[want.global]) <= 1e-12);
        assert!((global.fitness.unwrap() - want.global_fitness).abs() <= 1e-12);
    }
}
