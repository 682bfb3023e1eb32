use std::collections::VecDeque;

use super::line_search::strong_wolfe;
use super::{dot, norm, AamState, Objective};

#[derive(Debug, Clone, PartialEq)]
pub struct LbfgsConfig {
    /// Number of correction pairs kept.
    pub history: usize,
    pub wolfe_c1: f64,
    pub wolfe_c2: f64,
    pub max_iters: usize,
    /// Stop once the gradient norm is at most this.
    pub grad_tol: f64,
}

impl Default for LbfgsConfig {
    fn default() -> Self {
        LbfgsConfig { history: 7, wolfe_c1: 1e-4, wolfe_c2: 0.9, max_iters: 10_000, grad_tol: 1e-10 }
    }
}

impl LbfgsConfig {
    pub fn with_grad_tol(grad_tol: f64) -> Self {
        LbfgsConfig { grad_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Gradient norm at most the tolerance under a fresh adjacency set.
    Converged,
    /// No step decreases the objective any more (floating-point floor).
    Stalled,
    /// Iteration cap reached.
    IterationCap,
}

#[derive(Debug, Clone)]
pub struct OptimizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub status: Termination,
}

impl OptimizeResult {
    pub fn converged(&self) -> bool {
        self.status == Termination::Converged
    }
}

struct Correction {
    s: Vec<f64>,
    y: Vec<f64>,
    rho: f64,
}

fn two_loop(history: &VecDeque<Correction>, grad: &[f64]) -> Vec<f64> {
    let mut q = grad.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for c in history.iter().rev() {
        let a = c.rho * dot(&c.s, &q);
        q.iter_mut().zip(&c.y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some(last) = history.back() {
        let gamma = dot(&last.s, &last.y) / dot(&last.y, &last.y);
        q.iter_mut().for_each(|qi| *qi *= gamma);
    }
    for (c, a) in history.iter().zip(alphas.iter().rev()) {
        let b = c.rho * dot(&c.y, &q);
        q.iter_mut().zip(&c.s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter_mut().for_each(|qi| *qi = -*qi);
    q
}

/// Minimizes `objective` from `x0` with L-BFGS.
///
/// The adjacency set used for evaluation is refreshed by [`AamState`] after
/// every step. Before declaring convergence the set is rebuilt at the
/// candidate point, and the search resumes if the fresh gradient is still
/// above tolerance.
pub fn layout_optimize<O: Objective + ?Sized>(objective: &O, x0: Vec<f64>, cfg: &LbfgsConfig) -> OptimizeResult {
    let dim = objective.dim();
    assert_eq!(x0.len(), dim, "starting point has the wrong dimension");

    let mut x = x0;
    objective.project(&mut x);
    let mut aam = AamState::new(objective.adjacency(&x));
    let mut grad = vec![0.0; dim];
    let mut value = objective.evaluate(&x, &aam.gamma, &mut grad);
    let mut evaluations = 1;
    let mut history: VecDeque<Correction> = VecDeque::with_capacity(cfg.history);
    let mut iterations = 0;

    let status = loop {
        if norm(&grad) <= cfg.grad_tol {
            let fresh = objective.adjacency(&x);
            if fresh == aam.gamma {
                break Termination::Converged;
            }
            aam.reset(fresh);
            value = objective.evaluate(&x, &aam.gamma, &mut grad);
            evaluations += 1;
            if norm(&grad) <= cfg.grad_tol {
                break Termination::Converged;
            }
        }
        if iterations >= cfg.max_iters {
            break Termination::IterationCap;
        }

        let mut dir = two_loop(&history, &grad);
        if !(dot(&dir, &grad) < 0.0) {
            history.clear();
            dir = grad.iter().map(|g| -g).collect();
        }
        let gamma = &aam.gamma;
        let mut eval = |p: &[f64], g: &mut [f64]| objective.evaluate(p, gamma, g);
        let mut found = strong_wolfe(&mut eval, &x, value, &grad, &dir, cfg.wolfe_c1, cfg.wolfe_c2, 1.0);
        if found.is_err() && !history.is_empty() {
            history.clear();
            dir = grad.iter().map(|g| -g).collect();
            found = strong_wolfe(&mut eval, &x, value, &grad, &dir, cfg.wolfe_c1, cfg.wolfe_c2, 1.0);
        }
        let point = match found {
            Ok(p) => p,
            Err(_) => break Termination::Stalled,
        };
        evaluations += point.evaluations;
        iterations += 1;

        let mut x_new = point.x;
        let mut grad_new = point.grad;
        let mut value_new = point.value;
        if objective.project(&mut x_new) {
            value_new = objective.evaluate(&x_new, &aam.gamma, &mut grad_new);
            evaluations += 1;
        }

        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = grad_new.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > f64::EPSILON * norm(&s) * norm(&y) && sy > 0.0 {
            if history.len() == cfg.history {
                history.pop_front();
            }
            history.push_back(Correction { s, y, rho: 1.0 / sy });
        }
        x = x_new;
        grad = grad_new;
        value = value_new;

        if aam.step(|| objective.adjacency(&x)) {
            value = objective.evaluate(&x, &aam.gamma, &mut grad);
            evaluations += 1;
        }
    };

    OptimizeResult { grad_norm: norm(&grad), x, value, iterations, evaluations, status }
}
