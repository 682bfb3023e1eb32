use std::time::{Duration, Instant};

use crate::graphhash::{hash_pair, layout_to_graph_raw, ExploredSet, HashPair};
use crate::model::{Configuration, Instance};
use crate::optimizer::{layout_optimize, LayoutObjective, LbfgsConfig};
use crate::params::SolverParams;
use crate::penalty::full_energy;

/// When a run has to stop.
///
/// Both limits are optional; an unlimited budget never expires. The clock
/// and the count of layout optimizations are only consulted between moves.
#[derive(Debug, Clone)]
pub struct Budget {
    start: Instant,
    time_limit: Option<Duration>,
    max_optimizations: Option<u64>,
    target_radius: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { start: Instant::now(), time_limit: None, max_optimizations: None, target_radius: None }
    }

    pub fn time(limit: Duration) -> Self {
        Budget { time_limit: Some(limit), ..Budget::unlimited() }
    }

    /// Deterministic budget counted in layout optimizations.
    pub fn optimizations(count: u64) -> Self {
        Budget { max_optimizations: Some(count), ..Budget::unlimited() }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_max_optimizations(mut self, count: u64) -> Self {
        self.max_optimizations = Some(count);
        self
    }

    /// Stops the run as soon as a feasible radius at or below `target` is found.
    pub fn with_target(mut self, target: f64) -> Self {
        self.target_radius = Some(target);
        self
    }

    pub fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    pub fn target(&self) -> Option<f64> {
        self.target_radius
    }

    fn expired(&self, optimizations: u64) -> bool {
        self.max_optimizations.is_some_and(|m| optimizations >= m)
            || self.time_limit.is_some_and(|t| self.start.elapsed() >= t)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub layout_optimizations: u64,
    pub container_optimizations: u64,
    pub shs_calls: u64,
    pub shs_core_calls: u64,
    pub i_shs_calls: u64,
    pub perturbations: u64,
}

/// A layout at the context's working radius together with its energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub coords: Vec<f64>,
    pub energy: f64,
}

/// Mutable state shared by every phase of one run.
#[derive(Debug)]
pub struct SearchContext<'a> {
    pub instance: &'a Instance,
    pub params: &'a SolverParams,
    pub explored: ExploredSet,
    pub stats: SearchStats,
    pub budget: Budget,
    best: Option<Configuration>,
    best_is_fallback: bool,
    improvements: Vec<(f64, f64)>,
    admitted: Option<Vec<HashPair>>,
}

impl<'a> SearchContext<'a> {
    pub fn new(instance: &'a Instance, params: &'a SolverParams, budget: Budget) -> Self {
        SearchContext {
            instance,
            params,
            explored: ExploredSet::new(),
            stats: SearchStats::default(),
            budget,
            best: None,
            best_is_fallback: false,
            improvements: Vec::new(),
            admitted: None,
        }
    }

    /// Records every hash pair admitted by [`super::shs_core`] from now on.
    pub fn record_admissions(&mut self) {
        self.admitted.get_or_insert_with(Vec::new);
    }

    pub fn admitted(&self) -> &[HashPair] {
        self.admitted.as_deref().unwrap_or(&[])
    }

    /// The run is out of time or effort, or has reached its target.
    pub fn exhausted(&self) -> bool {
        self.target_reached() || self.budget.expired(self.stats.layout_optimizations)
    }

    pub fn target_reached(&self) -> bool {
        match (self.budget.target(), &self.best) {
            (Some(t), Some(b)) => b.container_radius <= t,
            _ => false,
        }
    }

    pub fn best(&self) -> Option<&Configuration> {
        self.best.as_ref()
    }

    pub fn best_radius(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.container_radius)
    }

    /// `(elapsed seconds, radius)` for every improvement of the run's best.
    pub fn improvements(&self) -> &[(f64, f64)] {
        &self.improvements
    }

    /// The current best came from the container optimizer's inflation
    /// fallback rather than a converged shrink.
    pub fn best_is_fallback(&self) -> bool {
        self.best_is_fallback
    }

    /// Offers a feasible layout as the run's best; returns whether it was taken.
    pub fn offer(&mut self, config: &Configuration, fallback: bool) -> bool {
        if config.container_radius >= self.best_radius() {
            return false;
        }
        self.improvements.push((self.budget.elapsed(), config.container_radius));
        self.best = Some(config.clone());
        self.best_is_fallback = fallback;
        true
    }

    pub fn energy(&self, coords: &[f64], container_radius: f64) -> f64 {
        full_energy(self.instance.radii(), coords, container_radius)
    }

    /// Runs layout optimization of `E_R` from `coords`.
    pub fn optimize(&mut self, coords: Vec<f64>, container_radius: f64) -> Candidate {
        self.stats.layout_optimizations += 1;
        let objective = LayoutObjective::new(self.instance.radii(), container_radius);
        let res = layout_optimize(&objective, coords, &LbfgsConfig::with_grad_tol(self.params.eps0));
        let energy = self.energy(&res.x, container_radius);
        Candidate { coords: res.x, energy }
    }

    pub fn hash(&self, coords: &[f64], container_radius: f64) -> HashPair {
        let graph = layout_to_graph_raw(self.instance.radii(), coords, container_radius, self.params.eps3);
        hash_pair(&graph, self.params)
    }

    pub(crate) fn note_admission(&mut self, pair: HashPair) {
        if let Some(log) = &mut self.admitted {
            log.push(pair);
        }
    }

    pub fn is_feasible(&self, energy: f64) -> bool {
        energy <= self.params.eps1
    }
}
