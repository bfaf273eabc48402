use std::sync::Arc;

use super::base::DEFAULT_BOUND;
use super::{BaseFunction, FunctionClass, ObjectiveFunction, Optimum, Transform};
use crate::domain::SearchSpace;
use crate::error::{Error, Result};

/// Coordinates of the transformed input are permuted, cut into consecutive
/// chunks sized by `proportions`, and each chunk is scored by its own base
/// function.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridSpec {
    pub functions: Vec<BaseFunction>,
    pub proportions: Vec<f64>,
    /// Zero-based: chunked coordinate `k` is `z[permutation[k]]`.
    pub permutation: Vec<usize>,
}

/// Splits `dim` into chunks proportional to `proportions` by largest
/// remainder: floors first, then one extra coordinate each to the largest
/// fractional parts (earlier entries win ties).
pub fn chunk_sizes(dim: usize, proportions: &[f64]) -> Vec<usize> {
    let exact: Vec<f64> = proportions.iter().map(|p| p * dim as f64).collect();
    let mut sizes: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..proportions.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &k in order.iter().take(dim.saturating_sub(assigned)) {
        sizes[k] += 1;
    }
    sizes
}

fn validate(spec: &HybridSpec, dim: usize) -> Result<()> {
    if spec.functions.is_empty() {
        return Err(Error::Construction("hybrid needs at least one sub-function".into()));
    }
    if spec.functions.len() != spec.proportions.len() {
        return Err(Error::Construction(format!(
            "{} sub-functions but {} proportions",
            spec.functions.len(),
            spec.proportions.len()
        )));
    }
    if spec.proportions.iter().any(|p| !(*p > 0.0)) {
        return Err(Error::Construction("hybrid proportions must be positive".into()));
    }
    let total: f64 = spec.proportions.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Construction(format!(
            "hybrid proportions sum to {total}, not 1"
        )));
    }
    if spec.permutation.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: spec.permutation.len(),
        });
    }
    let mut seen = vec![false; dim];
    for &p in &spec.permutation {
        if p >= dim || seen[p] {
            return Err(Error::Construction(format!(
                "permutation is not a rearrangement of 0..{dim}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// `Σ_k base_k(chunk_k) + bias` over the permuted, transformed input.
pub fn make_hybrid(spec: &HybridSpec, transform: Transform, bias: f64) -> Result<ObjectiveFunction> {
    let dim = transform.dim();
    validate(spec, dim)?;
    let sizes = chunk_sizes(dim, &spec.proportions);
    let parts: Vec<(BaseFunction, usize)> = spec.functions.iter().copied().zip(sizes).collect();
    let permutation = spec.permutation.clone();
    let t = Arc::new(transform);
    let map = Arc::clone(&t);
    let eval = move |x: &[f64]| {
        let z = map.apply(x);
        let permuted: Vec<f64> = permutation.iter().map(|&p| z[p]).collect();
        let mut start = 0;
        let mut total = 0.0;
        for &(base, len) in &parts {
            total += base.eval(&permuted[start..start + len]);
            start += len;
        }
        total + bias
    };
    let description = format!(
        "hybrid[{}]",
        spec.functions
            .iter()
            .zip(&spec.proportions)
            .map(|(f, p)| format!("{f} {p}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let space = SearchSpace::uniform(dim, -DEFAULT_BOUND, DEFAULT_BOUND)?;
    Ok(ObjectiveFunction::new("hybrid", space, eval)
        .with_class(FunctionClass::Hybrid)
        .with_description(description)
        .with_bias(bias)
        .with_optimum(Optimum {
            position: t.preimage(&vec![0.0; dim]),
            value: bias,
        })
        .with_transforms(vec![t]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{apply_transform, base_function};
    use crate::domain::RngStream;
    use proptest::prelude::*;

    fn identity(dim: usize) -> Vec<usize> {
        (0..dim).collect()
    }

    #[test]
    fn single_part_equals_transformed_base() {
        let t = Transform::shifted(vec![3.0, -1.0, 2.0]);
        let spec = HybridSpec {
            functions: vec![BaseFunction::Levy],
            proportions: vec![1.0],
            permutation: identity(3),
        };
        let h = make_hybrid(&spec, t.clone(), 7.0).unwrap();
        let g = apply_transform(&base_function("levy", 3).unwrap(), t, 7.0).unwrap();
        let mut rng = RngStream::new(1);
        for _ in 0..50 {
            let x = h.space().sample_uniform(&mut rng);
            assert_eq!(h.eval(&x), g.eval(&x));
        }
    }

    #[test]
    fn two_part_hybrid_matches_hand_composition() {
        let spec = HybridSpec {
            functions: vec![BaseFunction::Sphere, BaseFunction::Rastrigin],
            proportions: vec![0.5, 0.5],
            permutation: vec![2, 0, 3, 1],
        };
        let h = make_hybrid(&spec, Transform::identity(4), 0.0).unwrap();
        let x = [0.3, -1.2, 2.5, 0.7];
        let sphere = x[2] * x[2] + x[0] * x[0];
        let ras = |v: f64| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos() + 10.0;
        let oracle = sphere + ras(x[3]) + ras(x[1]);
        assert!((h.eval(&x) - oracle).abs() < 1e-12);
    }

    #[test]
    fn value_at_shift_is_bias() {
        let mut rng = RngStream::new(8);
        let o: Vec<f64> = (0..10).map(|_| rng.uniform_in(-80.0, 80.0)).collect();
        let spec = HybridSpec {
            functions: vec![BaseFunction::Zakharov, BaseFunction::Rosenbrock, BaseFunction::Rastrigin],
            proportions: vec![0.2, 0.4, 0.4],
            permutation: vec![9, 8, 7, 6, 5, 4, 3, 2, 1, 0],
        };
        let h = make_hybrid(&spec, Transform::shifted(o.clone()), 1100.0).unwrap();
        assert_eq!(h.eval(&o), 1100.0);
    }

    #[test]
    fn proportions_must_sum_to_one() {
        let spec = HybridSpec {
            functions: vec![BaseFunction::Sphere, BaseFunction::Discus],
            proportions: vec![0.5, 0.4],
            permutation: identity(4),
        };
        assert!(make_hybrid(&spec, Transform::identity(4), 0.0).is_err());
    }

    #[test]
    fn bad_permutation_rejected() {
        let spec = HybridSpec {
            functions: vec![BaseFunction::Sphere],
            proportions: vec![1.0],
            permutation: vec![0, 0, 1],
        };
        assert!(make_hybrid(&spec, Transform::identity(3), 0.0).is_err());
    }

    #[test]
    fn chunk_examples() {
        assert_eq!(chunk_sizes(10, &[0.2, 0.4, 0.4]), vec![2, 4, 4]);
        assert_eq!(chunk_sizes(10, &[0.3, 0.3, 0.4]), vec![3, 3, 4]);
        assert_eq!(chunk_sizes(10, &[0.1, 0.2, 0.2, 0.2, 0.3]), vec![1, 2, 2, 2, 3]);
        // equal remainders go to the earliest chunk
        assert_eq!(chunk_sizes(4, &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]), vec![2, 1, 1]);
        assert_eq!(chunk_sizes(2, &[0.2, 0.2, 0.2, 0.2, 0.2]), vec![1, 1, 0, 0, 0]);
    }

    proptest! {
        #[test]
        fn chunks_partition_dim(dim in 1usize..200, weights in prop::collection::vec(0.01f64..1.0, 1..7)) {
            let total: f64 = weights.iter().sum();
            let props: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let sizes = chunk_sizes(dim, &props);
            prop_assert_eq!(sizes.iter().sum::<usize>(), dim);
            for (s, p) in sizes.iter().zip(&props) {
                prop_assert!((*s as f64 - p * dim as f64).abs() < 1.0 + 1e-9);
            }
        }
    }
}
