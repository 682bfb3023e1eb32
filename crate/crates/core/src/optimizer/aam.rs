use crate::penalty::AdjacencySet;

/// Deferred adjacency rebuilding with exponential back-off.
///
/// A rebuild happens every `len` steps. If the rebuilt set equals the
/// current one the interval doubles, otherwise it resets to one step.
#[derive(Debug, Clone, PartialEq)]
pub struct AamState {
    pub cnt: usize,
    pub len: usize,
    pub gamma: AdjacencySet,
}

impl AamState {
    pub fn new(gamma: AdjacencySet) -> Self {
        AamState { cnt: 0, len: 1, gamma }
    }

    /// One maintenance step after a point update. `rebuild` is only called
    /// when the deferral interval is used up. Returns `true` when a new
    /// adjacency set was adopted.
    pub fn step(&mut self, rebuild: impl FnOnce() -> AdjacencySet) -> bool {
        self.cnt += 1;
        if self.cnt < self.len {
            return false;
        }
        let fresh = rebuild();
        self.cnt = 0;
        if fresh != self.gamma {
            self.len = 1;
            self.gamma = fresh;
            true
        } else {
            self.len *= 2;
            false
        }
    }

    /// Adopts `gamma` unconditionally and restarts the deferral schedule.
    pub fn reset(&mut self, gamma: AdjacencySet) {
        self.cnt = 0;
        self.len = 1;
        self.gamma = gamma;
    }
}
