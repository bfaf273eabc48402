//! Properties shared by every algorithm.

use hide::benchmarks::{suite_function, DEFAULT_SUITE_SEED};
use hide::{Algorithm, Optimizer, Termination};
use proptest::prelude::*;

fn algorithms(np: usize) -> Vec<Algorithm> {
    Algorithm::NAMES.iter().map(|n| Algorithm::from_name(n).unwrap().with_np(np)).collect()
}

#[test]
fn same_seed_same_result() {
    let f = suite_function(12, 5, DEFAULT_SUITE_SEED).unwrap();
    for a in algorithms(15) {
        let x = a.run(&f, &Termination::generations(20), 3).unwrap();
        let y = a.run(&f, &Termination::generations(20), 3).unwrap();
        assert_eq!(x, y, "{}", a.name());
        let z = a.run(&f, &Termination::generations(20), 4).unwrap();
        assert_ne!(x.trace, z.trace, "{}", a.name());
    }
}

#[test]
fn evaluation_budget_is_never_exceeded() {
    let f = suite_function(4, 3, DEFAULT_SUITE_SEED).unwrap();
    for a in algorithms(10) {
        let r = a.run(&f, &Termination::evaluations(333), 0).unwrap();
        assert!(r.evaluations <= 333 + 10, "{} used {}", a.name(), r.evaluations);
        assert_eq!(r.trace.len(), r.generations + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn best_is_in_bounds_and_trace_monotone(seed in any::<u64>(), index in 1usize..=30, dim in 2usize..6) {
        let f = suite_function(index, dim, DEFAULT_SUITE_SEED).unwrap();
        for a in algorithms(8) {
            let r = a.run(&f, &Termination::generations(10), seed).unwrap();
            prop_assert!(f.space().contains(&r.best.position));
            prop_assert_eq!(r.best.fitness, Some(*r.trace.last().unwrap()));
            prop_assert!((f.eval(&r.best.position) - r.best_fitness()).abs() <= 1e-9 * r.best_fitness().abs().max(1.0));
            prop_assert!(r.trace.windows(2).all(|w| w[1] <= w[0]));
        }
    }
}
