//! Multi-objective traveling salesman solver.
//!
//! The library evaluates one tour under several edge-cost matrices at once and
//! searches for the Pareto front with NSGA-II, a jumping-gene segment mutation,
//! and a 2-opt local search that scalarizes the objectives per application.
//!
//! Modules mirror the pipeline: [`tsplib`] parses instance files and builds
//! distance matrices, [`problem`] defines tours and fitness evaluation,
//! [`ops`] holds the variation operators, [`nsga2`] the generational engine,
//! [`metrics`] the front-quality indicators, and [`runner`] seeded end-to-end
//! runs plus file exports.
//!
//! Recoverable input problems (bad files, inconsistent configuration, I/O)
//! surface as [`Error`]. Contract violations between modules (mismatched
//! vector lengths, unset ranks, out-of-range move indices) panic; they are
//! programming errors, not runtime conditions.

pub mod config;
pub mod error;
pub mod metrics;
pub mod nsga2;
pub mod ops;
pub mod problem;
pub mod runner;
pub mod tsplib;

pub use config::{LsVariant, RunConfig};
pub use error::{Error, Result};
pub use problem::{Individual, MotspInstance, Tour};
pub use tsplib::Rounding;
