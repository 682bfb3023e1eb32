use super::{improves, insert_neighborhood, swap_neighborhood, Candidate, SearchContext};

fn best_of(candidates: Vec<Candidate>) -> Option<Candidate> {
    // First minimum wins on ties.
    candidates.into_iter().reduce(|best, c| if c.energy < best.energy { c } else { best })
}

/// Best-first search over swap neighborhoods with hash deduplication.
///
/// `x0` must be a local minimum of `E_R`. Layouts whose hash pair is already
/// in the explored set are never queued; if `x0` itself is known the call
/// returns it untouched. Stops on feasibility, on an empty queue, or after
/// `n` consecutive pops without improvement.
pub fn shs_core(ctx: &mut SearchContext<'_>, x0: Candidate, container_radius: f64) -> Candidate {
    ctx.stats.shs_core_calls += 1;
    let pair = ctx.hash(&x0.coords, container_radius);
    if !ctx.explored.check_and_insert(pair) {
        return x0;
    }
    ctx.note_admission(pair);

    let n = ctx.instance.n();
    let mut best = x0.clone();
    // Kept in admission order, so the first minimum is the earliest admitted.
    let mut queue = vec![x0];
    let mut unimproved = 0;
    while unimproved < n && !queue.is_empty() && !ctx.exhausted() {
        let pos = queue
            .iter()
            .enumerate()
            .fold(0, |m, (k, c)| if c.energy < queue[m].energy { k } else { m });
        let x = queue.remove(pos);
        if improves(x.energy, best.energy) {
            best = x.clone();
            unimproved = 0;
        } else {
            unimproved += 1;
        }
        if ctx.is_feasible(best.energy) {
            break;
        }
        for neighbor in swap_neighborhood(ctx, &x.coords, container_radius) {
            let pair = ctx.hash(&neighbor.coords, container_radius);
            if ctx.explored.check_and_insert(pair) {
                ctx.note_admission(pair);
                queue.push(neighbor);
            }
        }
    }
    best
}

/// Steepest-descent phases of [`shs`]: swap until stuck, then insert,
/// returning to swap after every successful insert. Returns the incumbent
/// once neither neighborhood improves it.
pub fn greedy_search(ctx: &mut SearchContext<'_>, x0: Candidate, container_radius: f64) -> Candidate {
    let mut best = x0;
    while !ctx.is_feasible(best.energy) && !ctx.exhausted() {
        if let Some(x) = best_of(swap_neighborhood(ctx, &best.coords, container_radius)) {
            if improves(x.energy, best.energy) {
                best = x;
                continue;
            }
        }
        if let Some(x) = best_of(insert_neighborhood(ctx, &best.coords, container_radius)) {
            if improves(x.energy, best.energy) {
                best = x;
                continue;
            }
        }
        break;
    }
    best
}

/// Greedy swap and insert descent followed by [`shs_core`], repeated while
/// the core finds something better.
pub fn shs(ctx: &mut SearchContext<'_>, x0: Candidate, container_radius: f64) -> Candidate {
    ctx.stats.shs_calls += 1;
    let mut best = x0;
    while !ctx.is_feasible(best.energy) && !ctx.exhausted() {
        best = greedy_search(ctx, best, container_radius);
        if ctx.is_feasible(best.energy) || ctx.exhausted() {
            break;
        }
        let x = shs_core(ctx, best.clone(), container_radius);
        if improves(x.energy, best.energy) {
            best = x;
            continue;
        }
        break;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_instance, random_layout};
    use crate::params::SolverParams;
    use crate::search::Budget;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn explored_start_returns_immediately() {
        let inst = generate_instance("linear", 5).unwrap();
        let params = SolverParams::default();
        let mut ctx = SearchContext::new(&inst, &params, Budget::unlimited());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_layout(&inst, 8.0, &mut rng);
        let x0 = ctx.optimize(x.coords, 8.0);
        let pair = ctx.hash(&x0.coords, 8.0);
        ctx.explored.check_and_insert(pair);
        let before = ctx.stats;
        let out = shs_core(&mut ctx, x0.clone(), 8.0);
        assert_eq!(out, x0);
        assert_eq!(ctx.explored.len(), 1);
        assert_eq!(ctx.stats.layout_optimizations, before.layout_optimizations);
    }

    #[test]
    fn feasible_start_is_kept() {
        let inst = generate_instance("linear", 5).unwrap();
        let params = SolverParams::default();
        let mut ctx = SearchContext::new(&inst, &params, Budget::unlimited());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = random_layout(&inst, 30.0, &mut rng);
        let x0 = ctx.optimize(x.coords, 30.0);
        assert!(ctx.is_feasible(x0.energy));
        let out = shs_core(&mut ctx, x0.clone(), 30.0);
        assert_eq!(out, x0);
        assert_eq!(ctx.explored.len(), 1);
        assert_eq!(shs(&mut ctx, x0.clone(), 30.0), x0);
    }

    #[test]
    fn core_finds_linear_five_at_optimal_radius() {
        let inst = generate_instance("linear", 5).unwrap();
        let params = SolverParams::default();
        let r = 9.0014;
        let mut found = false;
        for seed in 0..20 {
            let mut ctx = SearchContext::new(&inst, &params, Budget::unlimited());
            ctx.record_admissions();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_layout(&inst, r, &mut rng);
            let x0 = ctx.optimize(x.coords, r);
            let out = shs_core(&mut ctx, x0.clone(), r);
            assert!(out.energy <= x0.energy);
            let mut seen = std::collections::BTreeSet::new();
            assert!(ctx.admitted().iter().all(|p| seen.insert(*p)));
            if ctx.is_feasible(out.energy) {
                found = true;
                break;
            }
        }
        assert!(found);
    }
}
