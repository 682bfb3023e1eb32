use super::Objective;
use crate::penalty::{self, AdjacencySet};

/// `E_R(X)` over the `2n` center coordinates at a fixed container radius.
#[derive(Debug, Clone, Copy)]
pub struct LayoutObjective<'a> {
    pub radii: &'a [f64],
    pub container_radius: f64,
}

impl<'a> LayoutObjective<'a> {
    pub fn new(radii: &'a [f64], container_radius: f64) -> Self {
        LayoutObjective { radii, container_radius }
    }
}

impl Objective for LayoutObjective<'_> {
    fn dim(&self) -> usize {
        2 * self.radii.len()
    }

    fn adjacency(&self, x: &[f64]) -> AdjacencySet {
        AdjacencySet::build(self.radii, x)
    }

    fn evaluate(&self, x: &[f64], adj: &AdjacencySet, grad: &mut [f64]) -> f64 {
        penalty::evaluate(self.radii, x, self.container_radius, adj, Some(grad)).0
    }
}

/// `U_rho(Z) = E_R(X) + rho R^2` over `Z = (x_1, y_1, ..., x_n, y_n, R)`.
///
/// The container radius is kept at or above the largest circle radius.
#[derive(Debug, Clone, Copy)]
pub struct AugmentedObjective<'a> {
    pub radii: &'a [f64],
    pub rho: f64,
}

impl<'a> AugmentedObjective<'a> {
    pub fn new(radii: &'a [f64], rho: f64) -> Self {
        AugmentedObjective { radii, rho }
    }

    fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }
}

impl Objective for AugmentedObjective<'_> {
    fn dim(&self) -> usize {
        2 * self.radii.len() + 1
    }

    fn adjacency(&self, z: &[f64]) -> AdjacencySet {
        AdjacencySet::build(self.radii, &z[..z.len() - 1])
    }

    fn evaluate(&self, z: &[f64], adj: &AdjacencySet, grad: &mut [f64]) -> f64 {
        augmented_energy(self.radii, z, self.rho, adj, grad)
    }

    fn project(&self, z: &mut [f64]) -> bool {
        let last = z.len() - 1;
        let floor = self.min_radius();
        if z[last] < floor {
            z[last] = floor;
            true
        } else {
            false
        }
    }
}

/// Value and gradient of `U_rho` at `z`; the last gradient entry is
/// `2 rho R - 2 sum_i d_i0`.
pub fn augmented_energy(radii: &[f64], z: &[f64], rho: f64, adj: &AdjacencySet, grad: &mut [f64]) -> f64 {
    let n2 = z.len() - 1;
    let container = z[n2];
    let (energy, boundary_sum) = penalty::evaluate(radii, &z[..n2], container, adj, Some(&mut grad[..n2]));
    grad[n2] = 2.0 * rho * container - 2.0 * boundary_sum;
    energy + rho * container * container
}
