//! Contact graphs of compact layouts and the double modular hash used to
//! recognise layouts that were already explored.
//!
//! Vertices `1..=n` are the circles, labeled by radius rank; vertex `n + 1`
//! is the container. Two bodies are joined when they overlap by more than
//! `eps3`. The graph is invariant under rotations and reflections of the
//! layout and under moving a rattler (a circle without contacts), so the
//! hash identifies layouts up to those motions. It is not invariant under
//! relabeling equal circles.

use std::collections::BTreeSet;

use crate::model::{Configuration, Instance};
use crate::params::{HashParams, SolverParams};
use crate::penalty::{boundary_depth, pair_depth};

const RANK_TOLERANCE: f64 = 1e-12;

/// Dense 1-based ranks of ascending radii; radii within a relative `1e-12`
/// of the previous distinct value share its rank.
pub fn radius_ranking(radii: &[f64]) -> Vec<u32> {
    let mut ranks = Vec::with_capacity(radii.len());
    let mut rank = 0;
    let mut anchor = f64::NAN;
    for &r in radii {
        if !((r - anchor).abs() <= RANK_TOLERANCE * anchor.abs().max(r.abs())) {
            rank += 1;
            anchor = r;
        }
        ranks.push(rank);
    }
    ranks
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutGraph {
    /// Labels of the `n` circles followed by the container label `-1`.
    pub labels: Vec<i64>,
    /// Edges `(i, j)`, `i < j`, 0-based; index `n` is the container.
    pub edges: Vec<(usize, usize)>,
}

impl LayoutGraph {
    pub const CONTAINER_LABEL: i64 = -1;

    pub fn circle_count(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn container(&self) -> usize {
        self.circle_count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }
}

pub fn layout_to_graph_raw(radii: &[f64], coords: &[f64], container_radius: f64, eps3: f64) -> LayoutGraph {
    let n = radii.len();
    let mut labels: Vec<i64> = radius_ranking(radii).into_iter().map(i64::from).collect();
    labels.push(LayoutGraph::CONTAINER_LABEL);
    let center = |i: usize| [coords[2 * i], coords[2 * i + 1]];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if pair_depth(center(i), radii[i], center(j), radii[j]) > eps3 {
                edges.push((i, j));
            }
        }
        if boundary_depth(center(i), radii[i], container_radius) > eps3 {
            edges.push((i, n));
        }
    }
    LayoutGraph { labels, edges }
}

pub fn layout_to_graph(instance: &Instance, config: &Configuration, eps3: f64) -> LayoutGraph {
    layout_to_graph_raw(instance.radii(), &config.coords, config.container_radius, eps3)
}

/// Circles (0-based) with no contact at all.
pub fn rattlers(graph: &LayoutGraph) -> BTreeSet<usize> {
    let n = graph.circle_count();
    graph.degrees().into_iter().take(n).enumerate().filter(|(_, d)| *d == 0).map(|(i, _)| i).collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// `sum over edges (i, j) of p^i q^j mod M` with 1-based vertex indices.
pub fn graph_hash(graph: &LayoutGraph, params: HashParams) -> u64 {
    let m = params.modulus;
    graph.edges.iter().fold(0, |acc, &(i, j)| {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let term = mul_mod(pow_mod(params.p, lo as u64 + 1, m), pow_mod(params.q, hi as u64 + 1, m), m);
        (acc + term) % m
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HashPair {
    pub h1: u64,
    pub h2: u64,
}

pub fn hash_pair(graph: &LayoutGraph, params: &SolverParams) -> HashPair {
    HashPair { h1: graph_hash(graph, params.hash1), h2: graph_hash(graph, params.hash2) }
}

/// Hash pairs of every layout explored so far, ordered by `(h1, h2)`.
#[derive(Debug, Clone, Default)]
pub struct ExploredSet {
    pairs: BTreeSet<HashPair>,
}

impl ExploredSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, pair: &HashPair) -> bool {
        self.pairs.contains(pair)
    }

    /// Inserts `pair`; returns `false` if it was already present.
    pub fn check_and_insert(&mut self, pair: HashPair) -> bool {
        self.pairs.insert(pair)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> LayoutGraph {
        let mut labels: Vec<i64> = (1..=n as i64).collect();
        labels.push(-1);
        LayoutGraph { labels, edges: edges.to_vec() }
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(radius_ranking(&[2.0, 2.0, 3.0, 3.0, 5.0, 7.0]), vec![1, 1, 2, 2, 3, 4]);
        assert_eq!(radius_ranking(&[1.0, 2.0, 3.0]), vec![1, 2, 3]);
        assert_eq!(radius_ranking(&[4.0; 5]), vec![1; 5]);
        assert_eq!(radius_ranking(&[1.0, 1.0 + 1e-14, 2.0]), vec![1, 1, 2]);
    }

    #[test]
    fn hash_examples() {
        let p = SolverParams::default();
        assert_eq!(hash_pair(&graph(2, &[]), &p), HashPair { h1: 0, h2: 0 });
        assert_eq!(graph_hash(&graph(2, &[(0, 1)]), p.hash1), 633233);
        assert_eq!(hash_pair(&graph(2, &[(0, 1)]), &p), HashPair { h1: 633233, h2: 6406753 });
        assert_eq!(graph_hash(&graph(2, &[(0, 1), (0, 2)]), p.hash1), 122847202);
        // Edge order does not matter.
        assert_eq!(graph_hash(&graph(2, &[(0, 2), (1, 0)]), p.hash1), 122847202);
    }

    #[test]
    fn large_exponents_stay_in_range() {
        let p = SolverParams::default();
        let g = graph(500, &[(0, 500), (498, 499), (3, 400)]);
        let h = hash_pair(&g, &p);
        assert!(h.h1 < p.hash1.modulus && h.h2 < p.hash2.modulus);
        assert_eq!(pow_mod(17, 1, 998244353), 17);
        assert_eq!(pow_mod(193, 2, 998244353), 37249);
    }

    #[test]
    fn overlap_threshold_edges() {
        let inst = Instance::new("t", vec![1.0, 1.0]).unwrap();
        let deep = Configuration::from_centers(&[[0.0, 0.0], [2.0 - 1e-6, 0.0]], 10.0);
        assert_eq!(layout_to_graph(&inst, &deep, 1e-8).edges, vec![(0, 1)]);
        let shallow = Configuration::from_centers(&[[0.0, 0.0], [2.0 - 1e-9, 0.0]], 10.0);
        let g = layout_to_graph(&inst, &shallow, 1e-8);
        assert!(g.edges.is_empty());
        assert_eq!(rattlers(&g), BTreeSet::from([0, 1]));
        assert_eq!(g.labels, vec![1, 1, -1]);
    }

    #[test]
    fn rattler_detection() {
        let inst = Instance::new("t", vec![1.0, 1.0, 1.0]).unwrap();
        // Circles 0 and 1 overlap each other and 0 overlaps the wall; circle 2 floats.
        let cfg = Configuration::from_centers(&[[-2.1, 0.0], [-0.2, 0.0], [1.9, 0.0]], 3.0);
        let g = layout_to_graph(&inst, &cfg, 1e-8);
        assert_eq!(rattlers(&g), BTreeSet::from([2]));
        let packed = Configuration::from_centers(&[[-1.0, 0.0], [0.9, 0.0], [0.0, 1.0]], 1.9);
        assert!(rattlers(&layout_to_graph(&inst, &packed, 1e-8)).is_empty());
    }

    #[test]
    fn explored_set_counts_distinct_pairs() {
        let mut set = ExploredSet::new();
        let pair = HashPair { h1: 1, h2: 2 };
        assert!(set.check_and_insert(pair));
        assert!(!set.check_and_insert(pair));
        assert_eq!(set.len(), 1);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut reference = HashSet::new();
        let mut set = ExploredSet::new();
        for _ in 0..1_000_000 {
            let pair = HashPair { h1: rng.random_range(0..2000), h2: rng.random_range(0..2000) };
            assert_eq!(set.check_and_insert(pair), reference.insert(pair));
        }
        assert_eq!(set.len(), reference.len());
    }
}
