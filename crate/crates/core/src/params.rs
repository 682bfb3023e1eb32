//! Solver parameters and their default values.

/// Coefficients `(p, q, M)` of one modular contact-graph hash.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashParams {
    pub p: u64,
    pub q: u64,
    pub modulus: u64,
}

impl HashParams {
    pub const fn new(p: u64, q: u64, modulus: u64) -> Self {
        HashParams { p, q, modulus }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    /// Gradient-norm stop for layout optimization.
    pub eps0: f64,
    /// A configuration is feasible when its penalty energy is at most this.
    pub eps1: f64,
    /// Overlap depth above which two bodies are in contact in the layout graph.
    pub eps3: f64,
    pub hash1: HashParams,
    pub hash2: HashParams,
    /// Unimproved-iteration limit of one iterated search.
    pub maxiter: usize,
    /// Packing density used for the initial container estimate.
    pub rho0: f64,
    pub alpha0: f64,
    pub alpha_min: f64,
    pub beta: f64,
    /// `false` runs the greedy-only ablation (no hash-deduplicated core).
    pub enable_shs_core: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            eps0: 1e-10,
            eps1: 1e-25,
            eps3: 1e-8,
            hash1: HashParams::new(17, 193, 998_244_353),
            hash2: HashParams::new(97, 257, 1_004_535_809),
            maxiter: 200,
            rho0: 0.9,
            alpha0: 1e-2,
            alpha_min: 1e-4,
            beta: 0.2,
            enable_shs_core: true,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> crate::Result<()> {
        let positive = [self.eps0, self.eps1, self.eps3, self.rho0, self.alpha0, self.alpha_min];
        if positive.iter().any(|v| !(*v > 0.0)) {
            return Err(crate::Error::usage("tolerances, density and shrink ratios must be positive"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(crate::Error::usage("beta must lie in (0, 1)"));
        }
        if self.alpha_min > self.alpha0 {
            return Err(crate::Error::usage("alpha_min must not exceed alpha0"));
        }
        if self.rho0 > 1.0 {
            return Err(crate::Error::usage("initial density must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_settings() {
        let p = SolverParams::default();
        assert_eq!(p.eps0, 1e-10);
        assert_eq!(p.eps1, 1e-25);
        assert_eq!(p.eps3, 1e-8);
        assert_eq!(p.hash1, HashParams::new(17, 193, 998244353));
        assert_eq!(p.hash2, HashParams::new(97, 257, 1004535809));
        assert_eq!(p.maxiter, 200);
        assert_eq!((p.rho0, p.alpha0, p.alpha_min, p.beta), (0.9, 1e-2, 1e-4, 0.2));
        assert!(p.enable_shs_core);
        p.validate().unwrap();
    }

    #[test]
    fn rejects_bad_beta() {
        let p = SolverParams { beta: 1.0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = SolverParams { alpha_min: 0.5, ..Default::default() };
        assert!(p.validate().is_err());
    }
}
