//! Penalty energy of a relaxed packing.
//!
//! `E_R(X) = sum_{i<j} d_ij^2 + sum_i d_i0^2` where `d_ij` is the overlap
//! depth of circles `i` and `j` and `d_i0` the depth by which circle `i`
//! sticks out of the container. `E_R` is continuously differentiable and is
//! zero exactly on feasible packings.
//!
//! Sums are restricted to an [`AdjacencySet`] of nearby pairs. A freshly
//! built set contains every overlapping pair, so the restricted sum equals
//! the full one bit for bit; stale sets are kept around by the optimizer's
//! adaptive maintenance.

use crate::model::{Configuration, Instance};

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// `max(0, r_i + r_j - |c_i - c_j|)`
pub fn pair_depth(ci: [f64; 2], ri: f64, cj: [f64; 2], rj: f64) -> f64 {
    (ri + rj - distance(ci, cj)).max(0.0)
}

/// `max(0, |c| + r - R)`
pub fn boundary_depth(c: [f64; 2], r: f64, container_radius: f64) -> f64 {
    (c[0].hypot(c[1]) + r - container_radius).max(0.0)
}

/// Distance below which two circles count as adjacent.
pub fn adjacency_threshold(ri: f64, rj: f64, r_max: f64) -> f64 {
    ((ri + rj) / 2.0).max(r_max / 4.0) + ri + rj
}

/// Per-circle sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdjacencySet {
    neighbors: Vec<Vec<usize>>,
}

impl AdjacencySet {
    pub fn from_lists(neighbors: Vec<Vec<usize>>) -> Self {
        AdjacencySet { neighbors }
    }

    /// Pairwise scan over all circles with the strict threshold test.
    pub fn build(radii: &[f64], coords: &[f64]) -> Self {
        let n = radii.len();
        debug_assert_eq!(coords.len(), 2 * n);
        let r_max = radii.iter().copied().fold(0.0, f64::max);
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            let ci = [coords[2 * i], coords[2 * i + 1]];
            for j in i + 1..n {
                let cj = [coords[2 * j], coords[2 * j + 1]];
                if distance(ci, cj) < adjacency_threshold(radii[i], radii[j], r_max) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        AdjacencySet { neighbors }
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Each unordered pair once, `i < j`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }
}

pub fn build_adjacency(instance: &Instance, config: &Configuration) -> AdjacencySet {
    AdjacencySet::build(instance.radii(), &config.coords)
}

/// Energy, and optionally its gradient over the coordinates, restricted to
/// the pairs of `adj`. Also returns the sum of the boundary depths, which is
/// what the derivative with respect to the container radius needs.
///
/// Pairs at coincident centers and boundary terms at a center exactly on the
/// origin contribute zero gradient.
pub fn evaluate(
    radii: &[f64],
    coords: &[f64],
    container_radius: f64,
    adj: &AdjacencySet,
    mut grad: Option<&mut [f64]>,
) -> (f64, f64) {
    let n = radii.len();
    if let Some(g) = grad.as_deref_mut() {
        g[..2 * n].fill(0.0);
    }
    let center = |i: usize| [coords[2 * i], coords[2 * i + 1]];

    let mut energy = 0.0;
    for (i, j) in adj.pairs() {
        let (ci, cj) = (center(i), center(j));
        let d = pair_depth(ci, radii[i], cj, radii[j]);
        if d <= 0.0 {
            continue;
        }
        energy += d * d;
        if let Some(g) = grad.as_deref_mut() {
            let dist = distance(ci, cj);
            if dist > 0.0 {
                let k = -2.0 * d / dist;
                let gx = k * (ci[0] - cj[0]);
                let gy = k * (ci[1] - cj[1]);
                g[2 * i] += gx;
                g[2 * i + 1] += gy;
                g[2 * j] -= gx;
                g[2 * j + 1] -= gy;
            }
        }
    }

    let mut boundary_sum = 0.0;
    for i in 0..n {
        let c = center(i);
        let d = boundary_depth(c, radii[i], container_radius);
        if d <= 0.0 {
            continue;
        }
        energy += d * d;
        boundary_sum += d;
        if let Some(g) = grad.as_deref_mut() {
            let norm = c[0].hypot(c[1]);
            if norm > 0.0 {
                let k = 2.0 * d / norm;
                g[2 * i] += k * c[0];
                g[2 * i + 1] += k * c[1];
            }
        }
    }
    (energy, boundary_sum)
}

pub fn energy_with(radii: &[f64], coords: &[f64], container_radius: f64, adj: &AdjacencySet) -> f64 {
    evaluate(radii, coords, container_radius, adj, None).0
}

/// Energy under a freshly built adjacency set.
pub fn full_energy(radii: &[f64], coords: &[f64], container_radius: f64) -> f64 {
    energy_with(radii, coords, container_radius, &AdjacencySet::build(radii, coords))
}

pub fn energy(instance: &Instance, config: &Configuration, adj: &AdjacencySet) -> f64 {
    energy_with(instance.radii(), &config.coords, config.container_radius, adj)
}

pub fn energy_gradient(instance: &Instance, config: &Configuration, adj: &AdjacencySet) -> Vec<f64> {
    let mut g = vec![0.0; config.coords.len()];
    evaluate(instance.radii(), &config.coords, config.container_radius, adj, Some(&mut g));
    g
}

pub fn configuration_energy(instance: &Instance, config: &Configuration) -> f64 {
    full_energy(instance.radii(), &config.coords, config.container_radius)
}

pub fn is_feasible(instance: &Instance, config: &Configuration, eps1: f64) -> bool {
    configuration_energy(instance, config) <= eps1
}
