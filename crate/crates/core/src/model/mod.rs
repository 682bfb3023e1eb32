//! Problem instances, configurations and everything that reads, writes or
//! checks them.

pub mod family;
mod io;
mod svg;
mod verify;

use rand::Rng;

use crate::{Error, Result};

pub use family::{generate_instance, Family};
pub use io::{
    parse_instance, parse_solution, read_instance, read_solution, write_instance, write_solution,
    format_instance, format_solution, format_significant, Solution,
};
pub use svg::render_svg;
pub use verify::{verify_solution, FeasibilityReport};

/// A packing problem: `n` radii sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    radii: Vec<f64>,
}

impl Instance {
    /// Builds an instance, sorting the radii ascending.
    pub fn new(name: impl Into<String>, mut radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::usage("an instance needs at least one circle"));
        }
        if let Some(bad) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::usage(format!("radius {bad} is not a positive finite number")));
        }
        radii.sort_by(f64::total_cmp);
        Ok(Instance { name: name.into(), radii })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.radii[i]
    }

    pub fn max_radius(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn sum_squared_radii(&self) -> f64 {
        self.radii.iter().map(|r| r * r).sum()
    }

    /// Container radius at which the circles would fill the given density
    /// fraction of the container area. Also a lower bound on any feasible
    /// radius when `density == 1`.
    pub fn estimate_initial_radius(&self, density: f64) -> f64 {
        assert!(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
        (self.sum_squared_radii() / density).sqrt()
    }
}

/// Circle centers stored as `[x1, y1, x2, y2, ...]` plus the container radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub coords: Vec<f64>,
    pub container_radius: f64,
}

impl Configuration {
    pub fn new(coords: Vec<f64>, container_radius: f64) -> Self {
        debug_assert!(coords.len().is_multiple_of(2));
        Configuration { coords, container_radius }
    }

    pub fn from_centers(centers: &[[f64; 2]], container_radius: f64) -> Self {
        let coords = centers.iter().flat_map(|c| c.iter().copied()).collect();
        Configuration { coords, container_radius }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn center(&self, i: usize) -> [f64; 2] {
        [self.coords[2 * i], self.coords[2 * i + 1]]
    }

    pub fn centers(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.coords.chunks_exact(2).map(|c| [c[0], c[1]])
    }

    pub fn check_bound(&self, instance: &Instance) -> Result<()> {
        if self.coords.len() != 2 * instance.n() {
            return Err(Error::Dimension { expected: instance.n(), found: self.n() });
        }
        Ok(())
    }
}

/// Uniform point in the disk of radius `radius` centered at the origin.
pub fn sample_in_disk<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 2] {
    let rho = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    [rho * theta.cos(), rho * theta.sin()]
}

/// Places every center independently and uniformly in the disk of radius
/// `radius`; overlaps are allowed.
pub fn random_layout<R: Rng + ?Sized>(instance: &Instance, radius: f64, rng: &mut R) -> Configuration {
    assert!(radius > 0.0, "container radius must be positive");
    let mut coords = Vec::with_capacity(2 * instance.n());
    for _ in 0..instance.n() {
        coords.extend(sample_in_disk(rng, radius));
    }
    Configuration::new(coords, radius)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn instance_sorts_and_validates() {
        let inst = Instance::new("t", vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(inst.radii(), &[1.0, 2.0, 3.0]);
        assert!(Instance::new("t", vec![]).is_err());
        assert!(Instance::new("t", vec![1.0, -2.0]).is_err());
        assert!(Instance::new("t", vec![0.0]).is_err());
        assert!(Instance::new("t", vec![f64::NAN]).is_err());
    }

    #[test]
    fn initial_radius_estimate() {
        let one = Instance::new("a", vec![1.0]).unwrap();
        assert!((one.estimate_initial_radius(0.9) - 1.0540925533894598).abs() < 1e-12);
        assert_eq!(one.estimate_initial_radius(1.0), 1.0);
        let five = Instance::new("b", vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert!((five.estimate_initial_radius(0.9) - (55.0f64 / 0.9).sqrt()).abs() < 1e-12);
        assert!((five.estimate_initial_radius(0.9) - 7.81736).abs() < 1e-5);
    }

    #[test]
    fn random_layout_is_seeded_and_inside_disk() {
        let inst = Instance::new("big", vec![1.0; 1000]).unwrap();
        let a = random_layout(&inst, 10.0, &mut ChaCha8Rng::seed_from_u64(7));
        let b = random_layout(&inst, 10.0, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert!(a.centers().all(|[x, y]| x * x + y * y <= 100.0));
        let c = random_layout(&inst, 10.0, &mut ChaCha8Rng::seed_from_u64(8));
        assert_ne!(a, c);
    }

    #[test]
    fn radial_mean_matches_uniform_disk() {
        // For a uniform disk of radius R the mean distance from the center is 2R/3.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let samples = 100_000;
        let mean: f64 = (0..samples)
            .map(|_| {
                let [x, y] = sample_in_disk(&mut rng, 3.0);
                x.hypot(y)
            })
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 2.0).abs() / 2.0 < 0.01, "mean {mean}");
    }
}
