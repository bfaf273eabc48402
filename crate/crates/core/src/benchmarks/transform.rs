use std::sync::Arc;

use super::{ObjectiveFunction, Optimum};
use crate::domain::RngStream;
use crate::error::{Error, Result};

/// Largest tolerated `max |MᵀM − I|` for a rotation matrix.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

/// Input map `z = M · (scale · (x − o))`.
///
/// The rotation is stored row-major; `None` means the identity and skips the
/// matrix product.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    shift: Vec<f64>,
    rotation: Option<Vec<f64>>,
    scale: f64,
}

impl Transform {
    pub fn new(shift: Vec<f64>, rotation: Option<Vec<f64>>, scale: f64) -> Result<Self> {
        let dim = shift.len();
        if dim == 0 {
            return Err(Error::Construction("transform needs at least one dimension".into()));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Construction(format!("scale must be positive, got {scale}")));
        }
        let t = Transform {
            shift,
            rotation,
            scale,
        };
        if let Some(m) = &t.rotation {
            if m.len() != dim * dim {
                return Err(Error::Dimension {
                    expected: dim * dim,
                    found: m.len(),
                });
            }
            let err = t.orthogonality_error();
            if !(err < ORTHOGONALITY_TOLERANCE) {
                return Err(Error::Construction(format!(
                    "rotation matrix is not orthogonal: max |MᵀM − I| = {err:e}"
                )));
            }
        }
        Ok(t)
    }

    pub fn identity(dim: usize) -> Self {
        Transform {
            shift: vec![0.0; dim],
            rotation: None,
            scale: 1.0,
        }
    }

    pub fn shifted(shift: Vec<f64>) -> Self {
        Transform {
            shift,
            rotation: None,
            scale: 1.0,
        }
    }

    /// Same transform with a different input scale.
    pub fn scaled(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Construction(format!("scale must be positive, got {scale}")));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn rotation(&self) -> Option<&[f64]> {
        self.rotation.as_deref()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The rotation as a dense row-major matrix, identity included.
    pub fn rotation_matrix(&self) -> Vec<f64> {
        match &self.rotation {
            Some(m) => m.clone(),
            None => identity_matrix(self.dim()),
        }
    }

    /// `max |MᵀM − I|`; 0 for the implicit identity.
    pub fn orthogonality_error(&self) -> f64 {
        match &self.rotation {
            Some(m) => orthogonality_error(m, self.dim()),
            None => 0.0,
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim());
        let d: Vec<f64> = x
            .iter()
            .zip(&self.shift)
            .map(|(xi, oi)| self.scale * (xi - oi))
            .collect();
        match &self.rotation {
            None => d,
            Some(m) => {
                let n = self.dim();
                (0..n)
                    .map(|i| {
                        m[i * n..(i + 1) * n]
                            .iter()
                            .zip(&d)
                            .map(|(a, b)| a * b)
                            .sum()
                    })
                    .collect()
            }
        }
    }

    /// The `x` with `apply(x) = z`: `o + Mᵀ z / scale`.
    pub fn preimage(&self, z: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let rotated: Vec<f64> = match &self.rotation {
            None => z.to_vec(),
            Some(m) => (0..n)
                .map(|j| (0..n).map(|i| m[i * n + j] * z[i]).sum())
                .collect(),
        };
        rotated
            .iter()
            .zip(&self.shift)
            .map(|(r, o)| o + r / self.scale)
            .collect()
    }
}

pub(crate) fn identity_matrix(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

pub(crate) fn orthogonality_error(m: &[f64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let dot: f64 = (0..n).map(|k| m[k * n + a] * m[k * n + b]).sum();
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// Random orthogonal matrix (row-major).
///
/// Fills an `n × n` matrix with standard normal deviates in row-major order,
/// then orthonormalizes its columns left to right with modified Gram-Schmidt
/// (two passes). This is the Q of a QR factorization whose R has a positive
/// diagonal, so the result is Haar distributed and fully determined by the
/// stream.
pub fn random_orthogonal(n: usize, rng: &mut RngStream) -> Vec<f64> {
    let mut a: Vec<f64> = (0..n * n).map(|_| rng.normal()).collect();
    for col in 0..n {
        for _pass in 0..2 {
            for prev in 0..col {
                let dot: f64 = (0..n).map(|r| a[r * n + prev] * a[r * n + col]).sum();
                for r in 0..n {
                    a[r * n + col] -= dot * a[r * n + prev];
                }
            }
        }
        let norm = (0..n).map(|r| a[r * n + col].powi(2)).sum::<f64>().sqrt();
        for r in 0..n {
            a[r * n + col] /= norm;
        }
    }
    a
}

/// `g(x) = f(M · (scale · (x − o))) + bias`.
///
/// When `f` has a known optimum at `p`, `g`'s optimum is the preimage of
/// `p`, which is `o` whenever `p` is the origin.
pub fn apply_transform(f: &ObjectiveFunction, t: Transform, bias: f64) -> Result<ObjectiveFunction> {
    if t.dim() != f.dim() {
        return Err(Error::Dimension {
            expected: f.dim(),
            found: t.dim(),
        });
    }
    if t.orthogonality_error() >= ORTHOGONALITY_TOLERANCE {
        return Err(Error::Construction("rotation matrix is not orthogonal".into()));
    }
    let t = Arc::new(t);
    let inner = f.evaluator();
    let map = Arc::clone(&t);
    let mut transforms = f.transforms().to_vec();
    transforms.push(Arc::clone(&t));
    let mut g = ObjectiveFunction::new(f.id(), f.space().clone(), move |x| {
        inner(&map.apply(x)) + bias
    })
    .with_description(f.description())
    .with_bias(f.bias() + bias)
    .with_transforms(transforms);
    if let Some(class) = f.class() {
        g = g.with_class(class);
    }
    if let Some(opt) = f.optimum() {
        g = g.with_optimum(Optimum {
            position: t.preimage(&opt.position),
            value: opt.value + bias,
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::base_function;

    #[test]
    fn random_rotations_are_orthogonal() {
        let mut rng = RngStream::new(11);
        for n in [1, 2, 10, 30, 50, 100] {
            let m = random_orthogonal(n, &mut rng);
            assert!(orthogonality_error(&m, n) < ORTHOGONALITY_TOLERANCE, "n = {n}");
        }
    }

    #[test]
    fn rotation_is_seed_determined() {
        let a = random_orthogonal(8, &mut RngStream::new(5));
        let b = random_orthogonal(8, &mut RngStream::new(5));
        assert_eq!(a, b);
    }

    #[test]
    fn non_orthogonal_rotation_rejected() {
        let err = Transform::new(vec![0.0; 2], Some(vec![1.0, 0.5, 0.0, 1.0]), 1.0);
        assert!(matches!(err, Err(Error::Construction(_))));
    }

    #[test]
    fn identity_transform_is_pointwise_identical() {
        let f = base_function("griewank", 6).unwrap();
        let g = apply_transform(&f, Transform::identity(6), 0.0).unwrap();
        let mut rng = RngStream::new(9);
        for _ in 0..100 {
            let x = f.space().sample_uniform(&mut rng);
            assert_eq!(f.eval(&x), g.eval(&x));
        }
    }

    #[test]
    fn shifted_sphere_optimum_carries_bias() {
        let mut rng = RngStream::new(2);
        let f = base_function("sphere", 10).unwrap();
        let o = f.space().sample_uniform(&mut rng);
        let g = apply_transform(&f, Transform::shifted(o.clone()), 100.0).unwrap();
        assert_eq!(g.eval(&o), 100.0);
        assert_eq!(g.optimum().unwrap().position, o);
        assert_eq!(g.optimum().unwrap().value, 100.0);
    }

    #[test]
    fn rotated_rastrigin_matches_explicit_matrix_product() {
        let n = 5;
        let mut rng = RngStream::new(21);
        let f = base_function("rastrigin", n).unwrap();
        let o: Vec<f64> = (0..n).map(|_| rng.uniform_in(-80.0, 80.0)).collect();
        let m = random_orthogonal(n, &mut rng);
        let scale = 0.0512;
        let t = Transform::new(o.clone(), Some(m.clone()), scale).unwrap();
        let g = apply_transform(&f, t, 500.0).unwrap();
        assert!((g.eval(&o) - 500.0).abs() < 1e-9);
        for _ in 0..20 {
            let x = f.space().sample_uniform(&mut rng);
            // z_i = sum_j m_ij * scale * (x_j - o_j), written out longhand
            let mut z = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    z[i] += m[i * n + j] * (scale * (x[j] - o[j]));
                }
            }
            let mut oracle = 0.0;
            for zi in &z {
                oracle += zi * zi - 10.0 * (2.0 * std::f64::consts::PI * zi).cos() + 10.0;
            }
            oracle += 500.0;
            assert!((g.eval(&x) - oracle).abs() < 1e-9 * oracle.abs().max(1.0));
        }
    }

    #[test]
    fn preimage_inverts_apply() {
        let mut rng = RngStream::new(4);
        let t = Transform::new(vec![1.0, -2.0, 3.0], Some(random_orthogonal(3, &mut rng)), 0.5)
            .unwrap();
        let x = [0.25, 4.0, -7.5];
        let back = t.preimage(&t.apply(&x));
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
