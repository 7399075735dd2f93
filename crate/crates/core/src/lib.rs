//! Strategyproof facility location on the unit circle.
//!
//! Agents report positions on a circle of circumference one. The
//! Proportional Circle Distance (PCD) mechanism picks each agent's location
//! with probability equal to the length of the arc facing that agent. This
//! crate evaluates PCD and related mechanisms, computes approximation
//! ratios, checks the structural properties behind the worst-case analysis,
//! and searches the instance space for bad instances.

pub mod circle;
pub mod cli;
pub mod error;
pub mod mechanism;
pub mod optimum;
pub mod ratio;
pub mod report;
pub mod search;
pub mod service;
pub mod suites;

pub use circle::{circle_distance, ArcProfile, CirclePoint, Instance};
pub use error::{Error, Result};
pub use mechanism::{Mechanism, Outcome};
pub use optimum::{cost_vector, optimum, CostVector, OptResult};
pub use ratio::{gamma, pcd_gamma, GammaReport, ALPHA, SC_BOUND};
pub use report::EvaluationReport;
pub use suites::{run_suite, Suite, SuiteOptions, SuiteReport};
