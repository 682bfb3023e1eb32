//! The outer solver: shrink, perturb and restart around the local search.
//!
//! [`solve`] first shrinks the container greedily from a density estimate
//! until a random restart no longer helps, then calls [`i_shs`] repeatedly
//! with a decaying shrink ratio until the budget runs out.

mod log;
mod rtd;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{random_layout, sample_in_disk, Configuration, Instance};
use crate::optimizer::{container_optimize, ContainerStatus};
use crate::params::SolverParams;
use crate::search::{strategy_for, Budget, Candidate, Intensifier, SearchContext, SearchStats};

pub use log::{success_times, LogEvent, RunLog};
pub use rtd::{rtd, Rtd};

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best_radius: f64,
    pub best_configuration: Configuration,
    pub elapsed_seconds: f64,
    /// Seconds until the final best radius was first found.
    pub time_to_best: f64,
    pub seed: u64,
    pub stats: SearchStats,
    /// How the best layout left the container optimizer.
    pub status: ContainerStatus,
    /// `(seconds, radius)` at every improvement, radii strictly decreasing.
    pub improvements: Vec<(f64, f64)>,
}

/// Relocates `m` distinct circles, `m` uniform in `1..=ceil(n/6)`, to
/// uniform positions in the container. Overlaps are allowed.
pub fn perturb<R: Rng + ?Sized>(instance: &Instance, config: &Configuration, rng: &mut R) -> Configuration {
    let n = instance.n();
    let m = rng.random_range(1..=n.div_ceil(6));
    let mut out = config.clone();
    for i in sample(rng, n, m) {
        let [x, y] = sample_in_disk(rng, config.container_radius);
        out.coords[2 * i] = x;
        out.coords[2 * i + 1] = y;
    }
    out
}

fn shrink(radius: f64, alpha: f64) -> f64 {
    (1.0 - alpha) * radius
}

/// Shrinks the container around `coords` and offers the result to the run.
/// Returns the feasible layout, or `None` if it failed re-verification.
fn container_step(ctx: &mut SearchContext<'_>, coords: &[f64], container_radius: f64) -> Option<Configuration> {
    ctx.stats.container_optimizations += 1;
    let res = container_optimize(ctx.instance, coords, container_radius, ctx.params);
    let config = res.config;
    if !ctx.is_feasible(ctx.energy(&config.coords, config.container_radius)) {
        return None;
    }
    ctx.offer(&config, res.status == ContainerStatus::Fallback);
    Some(config)
}

/// One iterated search from a fresh random layout.
///
/// Builds a feasible layout at `r0`, then alternates local search at a
/// compact radius `(1 - alpha) * min(r0, R*)` with perturbation of the best
/// compact layout, shrinking the container whenever the compact energy
/// improves. Ends after `maxiter` consecutive searches without improvement
/// or when the budget runs out. Returns the best feasible layout it found.
pub fn i_shs<R: Rng + ?Sized>(
    ctx: &mut SearchContext<'_>,
    strategy: &dyn Intensifier,
    r0: f64,
    alpha: f64,
    rng: &mut R,
) -> Option<Configuration> {
    ctx.stats.i_shs_calls += 1;
    let start = random_layout(ctx.instance, r0, rng);
    let x = ctx.optimize(start.coords, r0);
    let mut best = container_step(ctx, &x.coords, r0)?;

    let mut compact_radius = shrink(r0.min(best.container_radius), alpha);
    let mut x = ctx.optimize(x.coords, compact_radius);
    let mut best_compact = x.clone();
    let mut unimproved = 0;
    while unimproved < ctx.params.maxiter && !ctx.exhausted() {
        x = strategy.improve(ctx, x, compact_radius);
        if crate::search::improves(x.energy, best_compact.energy) {
            unimproved = 0;
            best_compact = x.clone();
            if let Some(c) = container_step(ctx, &x.coords, compact_radius) {
                if c.container_radius < best.container_radius {
                    best = c;
                    compact_radius = shrink(r0.min(best.container_radius), alpha);
                    x = ctx.optimize(x.coords, compact_radius);
                    best_compact = x.clone();
                }
            }
        } else {
            unimproved += 1;
        }
        if ctx.exhausted() {
            break;
        }
        ctx.stats.perturbations += 1;
        let kicked = perturb(ctx.instance, &Configuration::new(best_compact.coords.clone(), compact_radius), rng);
        x = ctx.optimize(kicked.coords, compact_radius);
    }
    Some(best)
}

/// Random layout at `radius`, optimized and improved by `strategy`.
fn rapid_search<R: Rng + ?Sized>(
    ctx: &mut SearchContext<'_>,
    strategy: &dyn Intensifier,
    radius: f64,
    rng: &mut R,
) -> Candidate {
    let start = random_layout(ctx.instance, radius, rng);
    let x = ctx.optimize(start.coords, radius);
    strategy.improve(ctx, x, radius)
}

/// Full solver run.
///
/// Always returns at least the layout of the first container shrink, even
/// when the budget is already spent.
pub fn solve(instance: &Instance, params: &SolverParams, budget: Budget, seed: u64) -> RunResult {
    solve_in(&mut SearchContext::new(instance, params, budget), seed)
}

/// [`solve`] on a caller-supplied context, which keeps the explored set,
/// counters and any admission log for inspection afterwards.
pub fn solve_in(ctx: &mut SearchContext<'_>, seed: u64) -> RunResult {
    let (instance, params) = (ctx.instance, ctx.params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strategy = strategy_for(params);
    let mut alpha = params.alpha0;

    let radius = instance.estimate_initial_radius(params.rho0);
    let x = rapid_search(ctx, strategy.as_ref(), radius, &mut rng);
    if container_step(ctx, &x.coords, radius).is_none() {
        // The fallback layout is scaled until its energy is exactly zero, so
        // only a pathological instance ends up here.
        let layout = random_layout(instance, radius, &mut rng);
        container_step(ctx, &layout.coords, radius).expect("feasible inflated layout");
    }

    while !ctx.exhausted() {
        let radius = shrink(ctx.best_radius(), alpha);
        let x = rapid_search(ctx, strategy.as_ref(), radius, &mut rng);
        let before = ctx.best_radius();
        container_step(ctx, &x.coords, radius);
        if ctx.best_radius() >= before {
            break;
        }
    }

    while !ctx.exhausted() {
        let r0 = ctx.best_radius();
        i_shs(ctx, strategy.as_ref(), r0, alpha, &mut rng);
        alpha = params.alpha_min.max(alpha * params.beta);
    }

    let best = ctx.best().expect("initial layout").clone();
    let improvements = ctx.improvements().to_vec();
    RunResult {
        best_radius: best.container_radius,
        best_configuration: best,
        elapsed_seconds: ctx.budget.elapsed(),
        time_to_best: improvements.last().map_or(0.0, |e| e.0),
        seed,
        stats: ctx.stats,
        status: if ctx.best_is_fallback() { ContainerStatus::Fallback } else { ContainerStatus::Feasible },
        improvements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::generate_instance;
    use crate::penalty::is_feasible;

    #[test]
    fn perturbation_strength() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, max_m) in [(6, 1), (30, 5), (1, 1)] {
            let inst = generate_instance("linear", n).unwrap();
            let config = random_layout(&inst, 10.0, &mut rng);
            for _ in 0..200 {
                let out = perturb(&inst, &config, &mut rng);
                let moved = (0..n).filter(|&i| out.center(i) != config.center(i)).count();
                assert!((1..=max_m).contains(&moved), "n={n} moved={moved}");
                assert!(out.centers().all(|c| c[0].hypot(c[1]) <= 10.0));
            }
        }
    }

    #[test]
    fn zero_maxiter_returns_initial_layout() {
        let inst = generate_instance("linear", 5).unwrap();
        let params = SolverParams { maxiter: 0, ..SolverParams::default() };
        let mut ctx = SearchContext::new(&inst, &params, Budget::unlimited());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let strategy = strategy_for(&params);
        let out = i_shs(&mut ctx, strategy.as_ref(), 9.5, 1e-2, &mut rng).unwrap();
        assert_eq!(ctx.stats.shs_calls, 0);
        assert!(is_feasible(&inst, &out, params.eps1));
        assert!(out.container_radius >= inst.sum_squared_radii().sqrt());
    }

    #[test]
    fn solve_is_deterministic_under_effort_budget() {
        let inst = generate_instance("linear", 6).unwrap();
        let params = SolverParams::default();
        let a = solve(&inst, &params, Budget::optimizations(300), 7);
        let b = solve(&inst, &params, Budget::optimizations(300), 7);
        assert_eq!(a.best_configuration, b.best_configuration);
        assert_eq!(a.stats, b.stats);
        assert!(is_feasible(&inst, &a.best_configuration, params.eps1));
        assert!(a.improvements.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn spent_budget_still_returns_a_layout() {
        let inst = generate_instance("inv_sqrt", 4).unwrap();
        let params = SolverParams::default();
        let res = solve(&inst, &params, Budget::optimizations(0), 0);
        assert!(is_feasible(&inst, &res.best_configuration, params.eps1));
    }
}
