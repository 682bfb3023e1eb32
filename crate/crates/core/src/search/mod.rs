//! Local search at a fixed container radius.
//!
//! All moves map a local minimum of `E_R` to another local minimum: a swap
//! exchanges the centers of two circles of neighboring sizes, an insert
//! drops a small circle into a large vacancy, and both re-run layout
//! optimization afterwards. [`shs_core`] explores swap neighborhoods best
//! first and skips layouts whose contact-graph hash has been seen before;
//! [`shs`] wraps it with greedy swap and insert descent.

mod context;
mod neighborhood;
mod shs;
pub mod strategy;

pub use context::{Budget, Candidate, SearchContext, SearchStats};
pub use neighborhood::{
    build_swap_list, insert_neighbor, insert_neighborhood, insert_ops, swap_neighbor,
    swap_neighborhood, InsertOp, InsertOpSet, SwapList,
};
pub use shs::{greedy_search, shs, shs_core};
pub use strategy::{strategy_by_name, strategy_for, strategy_names, GreedyStrategy, Intensifier, ShsStrategy};

/// `a` beats `b` by more than rounding noise.
///
/// Energies near a stalled minimum jitter in the last few bits; counting
/// those as improvements would let the greedy loops spin on noise.
pub(crate) fn improves(a: f64, b: f64) -> bool {
    a < b - IMPROVEMENT_GUARD * b.abs()
}

const IMPROVEMENT_GUARD: f64 = 1e-11;
