//! The fixed 30-function catalog.
//!
//! Indices follow the CEC 2017 layout: f1–f3 unimodal, f4–f10 multimodal,
//! f11–f20 hybrid, f21–f30 composition, each with bias `100 · index`. Base
//! choices follow the CEC definitions where the base exists in this crate
//! and substitute a close relative otherwise (see each entry's notes).
//! Shifts, rotations and permutations are generated from a suite seed;
//! they are not the official CEC data, so values are not comparable with
//! published tables.

use super::base::DEFAULT_BOUND;
use super::{
    apply_transform, base_function, make_composition, make_hybrid, random_orthogonal,
    BaseFunction, CecData, CompositionComponent, CompositionSpec, FunctionClass, HybridSpec,
    ObjectiveFunction, Transform,
};
use crate::domain::RngStream;
use crate::error::{Error, Result};

use BaseFunction::*;

/// Suite seed used when none is given.
pub const DEFAULT_SUITE_SEED: u64 = 2017;

/// Dimensions the suite is calibrated for.
pub const STANDARD_DIMS: [usize; 4] = [10, 30, 50, 100];

/// Generated shifts are drawn from `[-SHIFT_RANGE, SHIFT_RANGE]`.
const SHIFT_RANGE: f64 = 80.0;

#[derive(Debug, Clone, Copy)]
enum Recipe {
    Plain { base: BaseFunction, rotated: bool },
    Hybrid(&'static [(BaseFunction, f64)]),
    Composition(&'static [Part]),
}

#[derive(Debug, Clone, Copy)]
enum Source {
    Base(BaseFunction),
    /// Catalog index of a hybrid entry.
    Hybrid(usize),
}

#[derive(Debug, Clone, Copy)]
struct Part {
    source: Source,
    sigma: f64,
    lambda: f64,
    bias: f64,
}

const fn part(base: BaseFunction, sigma: f64, lambda: f64, bias: f64) -> Part {
    Part {
        source: Source::Base(base),
        sigma,
        lambda,
        bias,
    }
}

const fn hpart(index: usize, sigma: f64, bias: f64) -> Part {
    Part {
        source: Source::Hybrid(index),
        sigma,
        lambda: 1.0,
        bias,
    }
}

/// One catalog slot.
#[derive(Debug, Clone, Copy)]
pub struct SuiteEntry {
    pub index: usize,
    pub class: FunctionClass,
    /// What the slot stands in for when it differs from the CEC original.
    pub notes: &'static str,
    recipe: Recipe,
}

impl SuiteEntry {
    pub fn id(&self) -> String {
        format!("f{}", self.index)
    }

    pub fn bias(&self) -> f64 {
        100.0 * self.index as f64
    }

    pub fn description(&self) -> String {
        match self.recipe {
            Recipe::Plain { base, rotated } => {
                format!("{} {base}", if rotated { "shifted+rotated" } else { "shifted" })
            }
            Recipe::Hybrid(parts) => format!(
                "hybrid[{}]",
                parts
                    .iter()
                    .map(|(b, p)| format!("{b} {p}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Recipe::Composition(parts) => format!(
                "composition[{}]",
                parts
                    .iter()
                    .map(|p| match p.source {
                        Source::Base(b) => b.id().to_string(),
                        Source::Hybrid(i) => format!("f{i}"),
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

const fn plain(index: usize, class: FunctionClass, base: BaseFunction, rotated: bool, notes: &'static str) -> SuiteEntry {
    SuiteEntry {
        index,
        class,
        notes,
        recipe: Recipe::Plain { base, rotated },
    }
}

const fn hybrid(index: usize, parts: &'static [(BaseFunction, f64)], notes: &'static str) -> SuiteEntry {
    SuiteEntry {
        index,
        class: FunctionClass::Hybrid,
        notes,
        recipe: Recipe::Hybrid(parts),
    }
}

const fn composition(index: usize, parts: &'static [Part], notes: &'static str) -> SuiteEntry {
    SuiteEntry {
        index,
        class: FunctionClass::Composition,
        notes,
        recipe: Recipe::Composition(parts),
    }
}

use FunctionClass::{Multimodal as M, Unimodal as U};

pub static CATALOG: [SuiteEntry; 30] = [
    plain(1, U, Sphere, true, "sphere in place of bent cigar"),
    plain(2, U, BentCigar, true, "bent cigar in place of sum of different powers"),
    plain(3, U, Zakharov, true, ""),
    plain(4, M, Rosenbrock, true, ""),
    plain(5, M, Rastrigin, true, ""),
    plain(6, M, ExpandedSchafferF6, true, ""),
    plain(7, M, Ackley, true, "ackley in place of lunacek bi-rastrigin"),
    plain(8, M, Rastrigin, false, "non-rotated rastrigin"),
    plain(9, M, Levy, true, ""),
    plain(10, M, Schwefel, true, ""),
    hybrid(11, &[(Zakharov, 0.2), (Rosenbrock, 0.4), (Rastrigin, 0.4)], ""),
    hybrid(12, &[(HighConditionedElliptic, 0.3), (Schwefel, 0.3), (BentCigar, 0.4)], ""),
    hybrid(13, &[(BentCigar, 0.3), (Rosenbrock, 0.3), (Rastrigin, 0.4)], "rastrigin in place of lunacek"),
    hybrid(14, &[(HighConditionedElliptic, 0.2), (Ackley, 0.2), (ExpandedSchafferF6, 0.2), (Rastrigin, 0.4)], ""),
    hybrid(15, &[(BentCigar, 0.2), (Griewank, 0.2), (Rastrigin, 0.3), (Rosenbrock, 0.3)], "griewank in place of hgbat"),
    hybrid(16, &[(ExpandedSchafferF6, 0.2), (Griewank, 0.2), (Rosenbrock, 0.3), (Schwefel, 0.3)], "griewank in place of hgbat"),
    hybrid(17, &[(Levy, 0.1), (Ackley, 0.2), (Rosenbrock, 0.2), (Schwefel, 0.2), (Rastrigin, 0.3)], "levy for katsuura, rosenbrock for griewank-rosenbrock"),
    hybrid(18, &[(HighConditionedElliptic, 0.2), (Ackley, 0.2), (Rastrigin, 0.2), (Griewank, 0.2), (Discus, 0.2)], "griewank in place of hgbat"),
    hybrid(19, &[(BentCigar, 0.2), (Rastrigin, 0.2), (Rosenbrock, 0.2), (Ackley, 0.2), (ExpandedSchafferF6, 0.2)], "rosenbrock for griewank-rosenbrock, ackley for weierstrass"),
    hybrid(20, &[(Discus, 0.1), (Levy, 0.1), (Ackley, 0.2), (Rastrigin, 0.2), (Schwefel, 0.2), (ExpandedSchafferF6, 0.2)], "discus for happycat, levy for katsuura"),
    composition(21, &[part(Rosenbrock, 10.0, 1.0, 0.0), part(HighConditionedElliptic, 20.0, 1e-6, 100.0), part(Rastrigin, 30.0, 1.0, 200.0)], ""),
    composition(22, &[part(Rastrigin, 10.0, 1.0, 0.0), part(Griewank, 20.0, 10.0, 100.0), part(Schwefel, 30.0, 1.0, 200.0)], ""),
    composition(23, &[part(Rosenbrock, 10.0, 1.0, 0.0), part(Ackley, 20.0, 10.0, 100.0), part(Schwefel, 30.0, 1.0, 200.0), part(Rastrigin, 40.0, 1.0, 300.0)], ""),
    composition(24, &[part(Ackley, 10.0, 1.0, 0.0), part(HighConditionedElliptic, 20.0, 1e-6, 100.0), part(Griewank, 30.0, 10.0, 200.0), part(Rastrigin, 40.0, 1.0, 300.0)], ""),
    composition(25, &[part(Rastrigin, 10.0, 10.0, 0.0), part(Griewank, 20.0, 1.0, 100.0), part(Ackley, 30.0, 10.0, 200.0), part(Discus, 40.0, 1e-6, 300.0), part(Rosenbrock, 50.0, 1.0, 400.0)], "griewank in place of happycat"),
    composition(26, &[part(ExpandedSchafferF6, 10.0, 10.0, 0.0), part(Schwefel, 20.0, 10.0, 100.0), part(Griewank, 20.0, 2.5, 200.0), part(Rosenbrock, 30.0, 1.0, 300.0), part(Rastrigin, 40.0, 1e-6, 400.0)], ""),
    composition(27, &[part(Griewank, 10.0, 10.0, 0.0), part(Rastrigin, 20.0, 10.0, 100.0), part(Schwefel, 30.0, 2.5, 200.0), part(BentCigar, 40.0, 1e-10, 300.0), part(HighConditionedElliptic, 50.0, 1e-6, 400.0), part(ExpandedSchafferF6, 60.0, 5e-4, 500.0)], "griewank in place of hgbat"),
    composition(28, &[part(Ackley, 10.0, 10.0, 0.0), part(Griewank, 20.0, 10.0, 100.0), part(Discus, 30.0, 1e-6, 200.0), part(Rosenbrock, 40.0, 1.0, 300.0), part(Levy, 50.0, 1.0, 400.0), part(ExpandedSchafferF6, 60.0, 5e-4, 500.0)], "levy in place of happycat"),
    composition(29, &[hpart(15, 10.0, 0.0), hpart(16, 30.0, 100.0), hpart(17, 50.0, 200.0)], ""),
    composition(30, &[hpart(15, 10.0, 0.0), hpart(18, 30.0, 100.0), hpart(19, 50.0, 200.0)], ""),
];

fn entry(index: usize) -> Result<&'static SuiteEntry> {
    CATALOG
        .get(index.wrapping_sub(1))
        .ok_or_else(|| Error::Catalog(format!("f{index}")))
}

fn draw_shift(dim: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..dim).map(|_| rng.uniform_in(-SHIFT_RANGE, SHIFT_RANGE)).collect()
}

fn draw_permutation(dim: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut p: Vec<usize> = (0..dim).collect();
    for k in (1..dim).rev() {
        let j = rng.index(k + 1);
        p.swap(k, j);
    }
    p
}

fn hybrid_spec(parts: &[(BaseFunction, f64)], permutation: Vec<usize>) -> HybridSpec {
    HybridSpec {
        functions: parts.iter().map(|p| p.0).collect(),
        proportions: parts.iter().map(|p| p.1).collect(),
        permutation,
    }
}

fn plain_function(base: BaseFunction, transform: Transform, bias: f64) -> Result<ObjectiveFunction> {
    let scaled = transform.scaled(base.suite_scale())?;
    apply_transform(&base_function(base.id(), scaled.dim())?, scaled, bias)
}

/// Hybrid catalog entry `index` with a fresh transform from `rng`; draw
/// order is shift, rotation, permutation.
fn generated_hybrid(index: usize, dim: usize, rng: &mut RngStream, shift: Vec<f64>, bias: f64) -> Result<ObjectiveFunction> {
    let Recipe::Hybrid(parts) = entry(index)?.recipe else {
        return Err(Error::Catalog(format!("f{index} is not a hybrid")));
    };
    let m = random_orthogonal(dim, rng);
    let perm = draw_permutation(dim, rng);
    make_hybrid(&hybrid_spec(parts, perm), Transform::new(shift, Some(m), 1.0)?, bias)
}

fn finish(f: ObjectiveFunction, e: &SuiteEntry) -> ObjectiveFunction {
    f.with_id(e.id())
        .with_class(e.class)
        .with_description(e.description())
}

/// Catalog function `index` (1-based) at `dim`, generated from `seed`.
///
/// Each index draws from its own ChaCha stream of the seed, so functions
/// are independent of each other and of which subset is built.
pub fn suite_function(index: usize, dim: usize, seed: u64) -> Result<ObjectiveFunction> {
    let e = entry(index)?;
    if dim < 2 {
        return Err(Error::config("the suite needs dim >= 2"));
    }
    let mut rng = RngStream::with_stream(seed, index as u64);
    let f = match e.recipe {
        Recipe::Plain { base, rotated } => {
            let o = draw_shift(dim, &mut rng);
            let m = rotated.then(|| random_orthogonal(dim, &mut rng));
            plain_function(base, Transform::new(o, m, 1.0)?, e.bias())?
        }
        Recipe::Hybrid(_) => {
            let o = draw_shift(dim, &mut rng);
            generated_hybrid(index, dim, &mut rng, o, e.bias())?
        }
        Recipe::Composition(parts) => {
            let mut components = Vec::with_capacity(parts.len());
            for p in parts {
                let o = draw_shift(dim, &mut rng);
                let function = match p.source {
                    Source::Base(b) => {
                        let m = random_orthogonal(dim, &mut rng);
                        plain_function(b, Transform::new(o.clone(), Some(m), 1.0)?, 0.0)?
                    }
                    Source::Hybrid(h) => generated_hybrid(h, dim, &mut rng, o.clone(), 0.0)?,
                };
                components.push(CompositionComponent {
                    function,
                    shift: o,
                    sigma: p.sigma,
                    lambda: p.lambda,
                    bias: p.bias,
                });
            }
            make_composition(&CompositionSpec { components }, e.bias())?
        }
    };
    Ok(finish(f, e))
}

/// Catalog function `index` built on user-supplied data instead of
/// generated transforms. Hybrids need the permutation; compositions need
/// one data set per component and are not supported.
pub fn suite_function_from_data(index: usize, data: &CecData) -> Result<ObjectiveFunction> {
    let e = entry(index)?;
    let t = data.transform.clone();
    let f = match e.recipe {
        Recipe::Plain { base, .. } => plain_function(base, t, e.bias())?,
        Recipe::Hybrid(parts) => {
            let perm = data.permutation.clone().ok_or_else(|| {
                Error::config(format!("{} is a hybrid and needs a permutation", e.id()))
            })?;
            make_hybrid(&hybrid_spec(parts, perm), t, e.bias())?
        }
        Recipe::Composition(_) => {
            return Err(Error::config(format!(
                "{} is a composition; single-transform data files do not describe it",
                e.id()
            )))
        }
    };
    Ok(finish(f, e))
}

pub fn suite_with_seed(dim: usize, seed: u64) -> Result<Vec<ObjectiveFunction>> {
    if !STANDARD_DIMS.contains(&dim) {
        log::info!("suite built at dim {dim}; calibrated dims are {STANDARD_DIMS:?}");
    }
    (1..=CATALOG.len())
        .map(|i| suite_function(i, dim, seed))
        .collect()
}

/// All 30 catalog functions at `dim` with the default suite seed.
pub fn suite(dim: usize) -> Result<Vec<ObjectiveFunction>> {
    suite_with_seed(dim, DEFAULT_SUITE_SEED)
}

/// Looks up `f1`..`f30` in the catalog or a base function by name.
pub fn resolve_function(id: &str, dim: usize, seed: u64) -> Result<ObjectiveFunction> {
    if let Some(index) = id.strip_prefix('f').and_then(|n| n.parse::<usize>().ok()) {
        return suite_function(index, dim, seed);
    }
    let f = base_function(id, dim)?;
    debug_assert_eq!(f.space().upper()[0], DEFAULT_BOUND);
    Ok(f)
}
