//! Continuous optimization: L-BFGS with adaptive adjacency maintenance, and
//! container shrinking by sequential penalty minimization.

mod aam;
mod container;
mod lbfgs;
mod line_search;
mod objectives;

pub use aam::AamState;
pub use container::{container_optimize, ContainerResult, ContainerStatus, SUMT_MAX_ROUNDS};
pub use lbfgs::{layout_optimize, LbfgsConfig, OptimizeResult, Termination};
pub use line_search::{strong_wolfe, LineSearchError, WolfePoint};
pub use objectives::{augmented_energy, AugmentedObjective, LayoutObjective};

use crate::penalty::AdjacencySet;

/// A differentiable function whose evaluation is restricted by an
/// adjacency structure that the optimizer maintains.
pub trait Objective {
    fn dim(&self) -> usize;

    /// Adjacency set for the point `x`, built from scratch.
    fn adjacency(&self, x: &[f64]) -> AdjacencySet;

    /// Value at `x` under `adj`; writes the gradient into `grad`.
    fn evaluate(&self, x: &[f64], adj: &AdjacencySet, grad: &mut [f64]) -> f64;

    /// Maps a trial point back into the admissible region. Returns `true`
    /// when `x` was modified.
    fn project(&self, _x: &mut [f64]) -> bool {
        false
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
