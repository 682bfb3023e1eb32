//! Vacancy detection: locating and measuring the holes of a layout.
//!
//! A vacancy is found by letting an extra circle `u = (x, y, r)` grow from a
//! seed point while it is pushed out of the packed circles and the
//! container. The growth reward `-rho r` is traded against the squared
//! overlap depths; two rounds with `rho = 0.5` and `rho = 0.1` bring `u`
//! close to a locally maximal hole. Seeds are the Voronoi vertices of the
//! circle centers inside the container and the points where Voronoi edges
//! cross the container boundary.

mod voronoi;

use crate::model::{Configuration, Instance};
use crate::optimizer::{layout_optimize, LbfgsConfig, Objective};
use crate::penalty::{adjacency_threshold, distance, AdjacencySet};

pub use voronoi::{build_voronoi, EdgeGeometry, VoronoiDiagram, VoronoiEdge, VoronoiVertex};

/// Penalty weights of the two detection rounds.
pub const STAGE_RHOS: [f64; 2] = [0.5, 0.1];
const SEED_MERGE_TOLERANCE: f64 = 1e-9;
const RESULT_MERGE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacancyCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Fixed circles inside a container; the background a vacancy lives in.
#[derive(Debug, Clone, Copy)]
pub struct Packing<'a> {
    pub radii: &'a [f64],
    pub coords: &'a [f64],
    pub container_radius: f64,
}

impl<'a> Packing<'a> {
    pub fn new(radii: &'a [f64], coords: &'a [f64], container_radius: f64) -> Self {
        debug_assert_eq!(coords.len(), 2 * radii.len());
        Packing { radii, coords, container_radius }
    }

    pub fn of(instance: &'a Instance, config: &'a Configuration) -> Self {
        Packing::new(instance.radii(), &config.coords, config.container_radius)
    }

    fn center(&self, i: usize) -> [f64; 2] {
        [self.coords[2 * i], self.coords[2 * i + 1]]
    }

    fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Radius of the largest circle centered at `p` that overlaps nothing;
    /// negative when `p` is inside a packed circle or outside the container.
    pub fn clearance(&self, p: [f64; 2]) -> f64 {
        (0..self.radii.len())
            .map(|i| distance(p, self.center(i)) - self.radii[i])
            .fold(self.container_radius - p[0].hypot(p[1]), f64::min)
    }

    /// Packed circles adjacent to `u` under the usual adjacency threshold.
    pub fn adjacency_of(&self, u: &[f64]) -> AdjacencySet {
        let ru = u[2].abs();
        let r_max = self.max_radius();
        let list = (0..self.radii.len())
            .filter(|&i| distance([u[0], u[1]], self.center(i)) < adjacency_threshold(ru, self.radii[i], r_max))
            .collect();
        AdjacencySet::from_lists(vec![list])
    }
}

/// `P(u) = sum_{i in adj} d_ui^2 + d_u0^2 - rho r_u`, overlap depths taken
/// with `|r_u|`, and its gradient over `(x_u, y_u, r_u)`.
pub fn vacancy_energy(packing: &Packing<'_>, u: &[f64], rho: f64, adj: &AdjacencySet, grad: &mut [f64]) -> f64 {
    let c = [u[0], u[1]];
    let ru = u[2].abs();
    let sign = if u[2] > 0.0 {
        1.0
    } else if u[2] < 0.0 {
        -1.0
    } else {
        0.0
    };
    grad[..3].fill(0.0);
    let mut value = 0.0;
    let mut depth_sum = 0.0;
    for &i in adj.neighbors(0) {
        let ci = packing.center(i);
        let dist = distance(c, ci);
        let d = (ru + packing.radii[i] - dist).max(0.0);
        if d <= 0.0 {
            continue;
        }
        value += d * d;
        depth_sum += d;
        if dist > 0.0 {
            let k = -2.0 * d / dist;
            grad[0] += k * (c[0] - ci[0]);
            grad[1] += k * (c[1] - ci[1]);
        }
    }
    let norm = c[0].hypot(c[1]);
    let d0 = (norm + ru - packing.container_radius).max(0.0);
    if d0 > 0.0 {
        value += d0 * d0;
        depth_sum += d0;
        if norm > 0.0 {
            grad[0] += 2.0 * d0 * c[0] / norm;
            grad[1] += 2.0 * d0 * c[1] / norm;
        }
    }
    grad[2] = 2.0 * sign * depth_sum - rho;
    value - rho * u[2]
}

/// [`vacancy_energy`] as an optimizer objective over `(x_u, y_u, r_u)`.
#[derive(Debug, Clone, Copy)]
pub struct VacancyObjective<'a> {
    pub packing: Packing<'a>,
    pub rho: f64,
}

impl Objective for VacancyObjective<'_> {
    fn dim(&self) -> usize {
        3
    }

    fn adjacency(&self, u: &[f64]) -> AdjacencySet {
        self.packing.adjacency_of(u)
    }

    fn evaluate(&self, u: &[f64], adj: &AdjacencySet, grad: &mut [f64]) -> f64 {
        vacancy_energy(&self.packing, u, self.rho, adj, grad)
    }
}

/// Minimizes `P` for one penalty weight from `start`.
pub fn minimize_vacancy(packing: &Packing<'_>, start: [f64; 3], rho: f64, cfg: &LbfgsConfig) -> [f64; 3] {
    let objective = VacancyObjective { packing: *packing, rho };
    let res = layout_optimize(&objective, start.to_vec(), cfg);
    [res.x[0], res.x[1], res.x[2]]
}

/// Turns an optimized `u` into a reported vacancy: the center is kept and
/// the radius is the free clearance there, so the result overlaps nothing.
/// `None` when the optimization left the neighborhood of the container or
/// ended inside a circle.
pub fn report_vacancy(packing: &Packing<'_>, u: [f64; 3]) -> Option<VacancyCircle> {
    let center = [u[0], u[1]];
    if !(center[0].is_finite() && center[1].is_finite()) || center[0].hypot(center[1]) > 2.0 * packing.container_radius {
        return None;
    }
    let radius = packing.clearance(center);
    (radius > 0.0).then_some(VacancyCircle { center, radius })
}

/// Two-stage detection from one seed.
pub fn detect_vacancy_in(packing: &Packing<'_>, seed: [f64; 2], eps0: f64) -> Option<VacancyCircle> {
    let cfg = LbfgsConfig::with_grad_tol(eps0);
    let mut u = [seed[0], seed[1], 0.0];
    for rho in STAGE_RHOS {
        u = minimize_vacancy(packing, u, rho, &cfg);
    }
    report_vacancy(packing, u)
}

pub fn detect_vacancy(instance: &Instance, config: &Configuration, seed: [f64; 2], eps0: f64) -> Option<VacancyCircle> {
    detect_vacancy_in(&Packing::of(instance, config), seed, eps0)
}

fn push_unique(points: &mut Vec<[f64; 2]>, p: [f64; 2]) {
    if !points.iter().any(|q| distance(*q, p) <= SEED_MERGE_TOLERANCE) {
        points.push(p);
    }
}

/// Points where the segment `a -> b` crosses the circle of radius `r`.
fn circle_crossings(a: [f64; 2], b: [f64; 2], r: f64) -> Vec<[f64; 2]> {
    let d = [b[0] - a[0], b[1] - a[1]];
    let qa = d[0] * d[0] + d[1] * d[1];
    if qa == 0.0 {
        return Vec::new();
    }
    let qb = 2.0 * (a[0] * d[0] + a[1] * d[1]);
    let qc = a[0] * a[0] + a[1] * a[1] - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let root = disc.sqrt();
    let mut out = Vec::new();
    for t in [(-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)] {
        if (0.0..=1.0).contains(&t) {
            let p = [a[0] + t * d[0], a[1] + t * d[1]];
            // Snap onto the circle.
            let s = r / p[0].hypot(p[1]);
            out.push([p[0] * s, p[1] * s]);
        }
    }
    out
}

/// Starting points for vacancy detection: Voronoi vertices strictly inside
/// the container, then every crossing of a Voronoi edge with the container
/// boundary. A single circle has no diagram; eight points on the circle of
/// radius `(R + r_1) / 2` are used instead.
pub fn seed_points(packing: &Packing<'_>, diagram: &VoronoiDiagram) -> Vec<[f64; 2]> {
    let r = packing.container_radius;
    let mut seeds = Vec::new();
    if packing.radii.len() == 1 {
        let ring = 0.5 * (r + packing.radii[0]);
        for k in 0..8 {
            let angle = k as f64 * std::f64::consts::FRAC_PI_4;
            push_unique(&mut seeds, [ring * angle.cos(), ring * angle.sin()]);
        }
        return seeds;
    }
    for v in &diagram.vertices {
        if v.position[0].hypot(v.position[1]) < r {
            push_unique(&mut seeds, v.position);
        }
    }
    for e in &diagram.edges {
        let (a, b) = e.clipped(r);
        for p in circle_crossings(a, b, r) {
            push_unique(&mut seeds, p);
        }
    }
    if packing.radii.is_empty() {
        seeds.push([0.0, 0.0]);
    }
    seeds
}

/// Detects vacancies from every seed, merges duplicates and sorts them by
/// radius, largest first (ties by center).
pub fn detect_all_in(packing: &Packing<'_>, eps0: f64) -> Vec<VacancyCircle> {
    let diagram = build_voronoi(packing.coords);
    let mut found: Vec<VacancyCircle> = Vec::new();
    for seed in seed_points(packing, &diagram) {
        let Some(v) = detect_vacancy_in(packing, seed, eps0) else { continue };
        match found.iter_mut().find(|w| distance(w.center, v.center) <= RESULT_MERGE_TOLERANCE) {
            Some(w) if v.radius > w.radius => *w = v,
            Some(_) => {}
            None => found.push(v),
        }
    }
    found.sort_by(|a, b| {
        b.radius
            .total_cmp(&a.radius)
            .then(a.center[0].total_cmp(&b.center[0]))
            .then(a.center[1].total_cmp(&b.center[1]))
    });
    found
}

pub fn detect_all(instance: &Instance, config: &Configuration, eps0: f64) -> Vec<VacancyCircle> {
    detect_all_in(&Packing::of(instance, config), eps0)
}
