use super::{Configuration, Instance};
use crate::penalty::{boundary_depth, pair_depth};
use crate::Result;

/// Overlap statistics of a configuration, computed over every pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub max_pair_depth: f64,
    pub max_boundary_depth: f64,
    pub energy: f64,
    pub feasible: bool,
}

impl FeasibilityReport {
    pub fn max_depth(&self) -> f64 {
        self.max_pair_depth.max(self.max_boundary_depth)
    }
}

/// Full O(n^2) check of a placement.
///
/// With `tol = Some(t)` the configuration is feasible when no overlap depth
/// exceeds `t`; with `None` it is feasible when the penalty energy is at
/// most `eps1`.
pub fn verify_solution(
    instance: &Instance,
    config: &Configuration,
    tol: Option<f64>,
    eps1: f64,
) -> Result<FeasibilityReport> {
    config.check_bound(instance)?;
    let radii = instance.radii();
    let n = instance.n();
    let r_container = config.container_radius;

    let mut energy = 0.0;
    let mut max_pair_depth = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let d = pair_depth(config.center(i), radii[i], config.center(j), radii[j]);
            energy += d * d;
            max_pair_depth = max_pair_depth.max(d);
        }
    }
    let mut max_boundary_depth = 0.0f64;
    for i in 0..n {
        let d = boundary_depth(config.center(i), radii[i], r_container);
        energy += d * d;
        max_boundary_depth = max_boundary_depth.max(d);
    }
    let feasible = match tol {
        Some(t) => max_pair_depth <= t && max_boundary_depth <= t,
        None => energy <= eps1,
    };
    Ok(FeasibilityReport { max_pair_depth, max_boundary_depth, energy, feasible })
}
