//! Benchmark radius families, registered by name.

use std::fmt;
use std::str::FromStr;

use super::Instance;
use crate::{Error, Result};

/// Radius law `r_i = f(i)` for `i = 1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `r_i = i`
    Linear,
    /// `r_i = i^(-1/2)`
    InvSqrt,
    /// `r_i = i^(1/2)`
    Sqrt,
    /// `r_i = i^(-2/3)`
    InvTwoThirds,
    /// `r_i = i^(-1/5)`
    InvFifth,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Linear, Family::InvSqrt, Family::Sqrt, Family::InvTwoThirds, Family::InvFifth];

    pub fn name(self) -> &'static str {
        match self {
            Family::Linear => "linear",
            Family::InvSqrt => "inv_sqrt",
            Family::Sqrt => "sqrt",
            Family::InvTwoThirds => "inv_two_thirds",
            Family::InvFifth => "inv_fifth",
        }
    }

    pub fn radius(self, i: usize) -> f64 {
        let i = i as f64;
        match self {
            Family::Linear => i,
            Family::InvSqrt => 1.0 / i.sqrt(),
            Family::Sqrt => i.sqrt(),
            Family::InvTwoThirds => i.powf(-2.0 / 3.0),
            Family::InvFifth => i.powf(-0.2),
        }
    }

    pub fn instance(self, n: usize) -> Result<Instance> {
        if n == 0 {
            return Err(Error::usage("n must be at least 1"));
        }
        let radii = (1..=n).map(|i| self.radius(i)).collect();
        Instance::new(format!("{}_{n}", self.name()), radii)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::usage(format!("unknown family `{s}` (known: {})", known.join(", ")))
        })
    }
}

pub fn generate_instance(family: &str, n: usize) -> Result<Instance> {
    family.parse::<Family>()?.instance(n)
}
