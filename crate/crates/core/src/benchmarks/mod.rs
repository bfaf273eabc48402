//! CEC-2017-style objective functions.
//!
//! Base functions are combined with shift/rotation [`Transform`]s, hybrid
//! coordinate splits and distance-weighted compositions. [`suite`] builds a
//! fixed 30-function catalog (3 unimodal, 7 multimodal, 10 hybrid,
//! 10 composition) from a seed; [`load_cec_data`] reads externally supplied
//! shift/rotation data.

mod base;
mod composition;
mod data;
mod hybrid;
mod suite;
mod transform;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::SearchSpace;

pub use base::{base_function, BaseFunction, DEFAULT_BOUND};
pub use composition::{composition_weights, make_composition, CompositionComponent, CompositionSpec, Mixture};
pub use data::{load_cec_data, write_cec_data, CecData};
pub use hybrid::{chunk_sizes, make_hybrid, HybridSpec};
pub use suite::{
    resolve_function, suite, suite_function, suite_function_from_data, suite_with_seed,
    SuiteEntry, CATALOG, DEFAULT_SUITE_SEED, STANDARD_DIMS,
};
pub use transform::{apply_transform, random_orthogonal, Transform};

/// Taxonomy tag used by the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionClass {
    Unimodal,
    Multimodal,
    Hybrid,
    Composition,
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionClass::Unimodal => "unimodal",
            FunctionClass::Multimodal => "multimodal",
            FunctionClass::Hybrid => "hybrid",
            FunctionClass::Composition => "composition",
        })
    }
}

/// Known global optimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub position: Vec<f64>,
    pub value: f64,
}

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A deterministic scalar field over a [`SearchSpace`].
///
/// Cloning is cheap; the evaluator is shared. Instances are immutable and
/// can be evaluated from many threads at once.
#[derive(Clone)]
pub struct ObjectiveFunction {
    id: String,
    space: SearchSpace,
    bias: f64,
    class: Option<FunctionClass>,
    description: String,
    optimum: Option<Optimum>,
    transforms: Vec<Arc<Transform>>,
    mixture: Option<Arc<Mixture>>,
    eval: Arc<EvalFn>,
}

impl ObjectiveFunction {
    pub fn new(
        id: impl Into<String>,
        space: SearchSpace,
        eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ObjectiveFunction {
            id: id.into(),
            space,
            bias: 0.0,
            class: None,
            description: String::new(),
            optimum: None,
            transforms: Vec::new(),
            mixture: None,
            eval: Arc::new(eval),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_space(mut self, space: SearchSpace) -> Self {
        self.space = space;
        self
    }

    pub fn with_class(mut self, class: FunctionClass) -> Self {
        self.class = Some(class);
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn with_optimum(mut self, optimum: Optimum) -> Self {
        self.optimum = Some(optimum);
        self
    }

    pub(crate) fn with_bias(mut self, bias: f64) -> Self {
        self.bias = bias;
        self
    }

    pub(crate) fn with_transforms(mut self, transforms: Vec<Arc<Transform>>) -> Self {
        self.transforms = transforms;
        self
    }

    pub(crate) fn with_mixture(mut self, mixture: Arc<Mixture>) -> Self {
        self.mixture = Some(mixture);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Additive offset built into the function's values.
    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn class(&self) -> Option<FunctionClass> {
        self.class
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn optimum(&self) -> Option<&Optimum> {
        self.optimum.as_ref()
    }

    /// Every shift/rotation used to construct this function, components
    /// included.
    pub fn transforms(&self) -> &[Arc<Transform>] {
        &self.transforms
    }

    /// Mixture weights for composition functions.
    pub fn mixture(&self) -> Option<&Mixture> {
        self.mixture.as_deref()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub(crate) fn evaluator(&self) -> Arc<EvalFn> {
        Arc::clone(&self.eval)
    }
}

impl fmt::Debug for ObjectiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveFunction")
            .field("id", &self.id)
            .field("dim", &self.dim())
            .field("bias", &self.bias)
            .field("class", &self.class)
            .finish_non_exhaustive()
    }
}
