//! Solver for packing `n` unequal circles into the smallest possible circular
//! container.
//!
//! The solver works on a penalty relaxation of the packing problem: circles
//! may overlap each other and the container, and the squared overlap depths
//! are minimized with L-BFGS. Around that continuous core sit
//!
//! * container shrinking by sequential unconstrained minimization,
//! * swap and insert neighborhoods, the latter fed by a Voronoi-seeded
//!   vacancy detector,
//! * a contact-graph hash that keeps the local search from revisiting
//!   equivalent layouts, and
//! * an iterated shrink / perturb / restart driver.
//!
//! Local search strategies and radius families are looked up by name at run
//! time; see [`search::strategy`] and [`model::family`].

pub mod driver;
pub mod error;
pub mod graphhash;
pub mod model;
pub mod optimizer;
pub mod params;
pub mod penalty;
pub mod search;
pub mod vacancy;

pub use error::{Error, Result};
pub use model::{Configuration, FeasibilityReport, Instance};
pub use params::{HashParams, SolverParams};
