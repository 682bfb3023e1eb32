use std::collections::BTreeSet;

use super::{Candidate, SearchContext};
use crate::graphhash::{layout_to_graph_raw, radius_ranking, rattlers};
use crate::model::Instance;
use crate::vacancy::{detect_all_in, Packing, VacancyCircle};

/// Pairs of circles `(i, j)`, `i < j`, whose radius ranks differ by one.
pub type SwapList = Vec<(usize, usize)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct InsertOp {
    /// Index of a small circle (radii ascending).
    pub circle: usize,
    /// Index into the vacancy list sorted by radius, largest first.
    pub vacancy: usize,
}

pub type InsertOpSet = Vec<InsertOp>;

/// Swappable pairs: circles of adjacent radius rank, minus pairs of two
/// rattlers.
pub fn build_swap_list(instance: &Instance, rattlers: &BTreeSet<usize>) -> SwapList {
    let ranks = radius_ranking(instance.radii());
    let n = ranks.len();
    let mut list = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if ranks[i].abs_diff(ranks[j]) == 1 && !(rattlers.contains(&i) && rattlers.contains(&j)) {
                list.push((i, j));
            }
        }
    }
    list
}

/// Insert moves: each of the `ceil(n/3)` smallest non-rattler circles into
/// each of the `ceil(n/3)` largest vacancies.
pub fn insert_ops(n: usize, vacancy_count: usize, rattlers: &BTreeSet<usize>) -> InsertOpSet {
    let k = n.div_ceil(3);
    let mut ops = Vec::new();
    for circle in (0..k.min(n)).filter(|i| !rattlers.contains(i)) {
        for vacancy in 0..k.min(vacancy_count) {
            ops.push(InsertOp { circle, vacancy });
        }
    }
    ops
}

fn rattlers_of(ctx: &SearchContext<'_>, coords: &[f64], container_radius: f64) -> BTreeSet<usize> {
    let graph = layout_to_graph_raw(ctx.instance.radii(), coords, container_radius, ctx.params.eps3);
    rattlers(&graph)
}

/// Exchanges the centers of circles `i` and `j`, then re-optimizes.
pub fn swap_neighbor(ctx: &mut SearchContext<'_>, coords: &[f64], container_radius: f64, i: usize, j: usize) -> Candidate {
    let mut x = coords.to_vec();
    x.swap(2 * i, 2 * j);
    x.swap(2 * i + 1, 2 * j + 1);
    ctx.optimize(x, container_radius)
}

/// Moves circle `i` to `center`, then re-optimizes.
pub fn insert_neighbor(
    ctx: &mut SearchContext<'_>,
    coords: &[f64],
    container_radius: f64,
    i: usize,
    center: [f64; 2],
) -> Candidate {
    let mut x = coords.to_vec();
    x[2 * i] = center[0];
    x[2 * i + 1] = center[1];
    ctx.optimize(x, container_radius)
}

/// Every swap neighbor of `coords`, in swap-list order. Stops early when
/// the budget runs out.
pub fn swap_neighborhood(ctx: &mut SearchContext<'_>, coords: &[f64], container_radius: f64) -> Vec<Candidate> {
    let list = build_swap_list(ctx.instance, &rattlers_of(ctx, coords, container_radius));
    let mut out = Vec::with_capacity(list.len());
    for (i, j) in list {
        if ctx.exhausted() {
            break;
        }
        out.push(swap_neighbor(ctx, coords, container_radius, i, j));
    }
    out
}

/// Every insert neighbor of `coords`, using vacancies detected on `coords`.
pub fn insert_neighborhood(ctx: &mut SearchContext<'_>, coords: &[f64], container_radius: f64) -> Vec<Candidate> {
    let vacancies: Vec<VacancyCircle> =
        detect_all_in(&Packing::new(ctx.instance.radii(), coords, container_radius), ctx.params.eps0);
    let ops = insert_ops(ctx.instance.n(), vacancies.len(), &rattlers_of(ctx, coords, container_radius));
    let mut out = Vec::with_capacity(ops.len());
    for op in ops {
        if ctx.exhausted() {
            break;
        }
        out.push(insert_neighbor(ctx, coords, container_radius, op.circle, vacancies[op.vacancy].center));
    }
    out
}
