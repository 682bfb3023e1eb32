//! Intensification strategies selectable by name.

use super::{greedy_search, shs, Candidate, SearchContext};
use crate::params::SolverParams;

/// Improves a local minimum at a fixed container radius.
pub trait Intensifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn improve(&self, ctx: &mut SearchContext<'_>, x: Candidate, container_radius: f64) -> Candidate;
}

/// Greedy swap / insert descent plus the hash-deduplicated core.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShsStrategy;

impl Intensifier for ShsStrategy {
    fn name(&self) -> &'static str {
        "shs"
    }

    fn improve(&self, ctx: &mut SearchContext<'_>, x: Candidate, container_radius: f64) -> Candidate {
        shs(ctx, x, container_radius)
    }
}

/// Greedy descent only.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyStrategy;

impl Intensifier for GreedyStrategy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn improve(&self, ctx: &mut SearchContext<'_>, x: Candidate, container_radius: f64) -> Candidate {
        ctx.stats.shs_calls += 1;
        greedy_search(ctx, x, container_radius)
    }
}

fn registry() -> [Box<dyn Intensifier>; 2] {
    [Box::new(ShsStrategy), Box::new(GreedyStrategy)]
}

pub fn strategy_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name()).collect()
}

pub fn strategy_by_name(name: &str) -> Option<Box<dyn Intensifier>> {
    registry().into_iter().find(|s| s.name() == name)
}

/// The strategy `params` asks for.
pub fn strategy_for(params: &SolverParams) -> Box<dyn Intensifier> {
    if params.enable_shs_core {
        Box::new(ShsStrategy)
    } else {
        Box::new(GreedyStrategy)
    }
}
