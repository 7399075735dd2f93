//! The approximation ratio and the closed-form objects used to bound it.

mod bounds;
mod clustering;
mod reduction;
mod region;
mod two_pair;

pub use bounds::{equidistance_ball_bound, sc_bound_polynomial, SC_BOUND};
pub use clustering::{
    clustering_gamma, clustering_max, gamma_hypothesis, gamma_hypothesis_k, t_max, ClusteringMax,
};
pub use reduction::{is_reduced, large_arc_reduce, slide_rates, Reduction, ReductionLeg, SlideRates};
pub use region::{
    region_costs, region_formula, region_gamma, region_simplified_formula, regions_of, RegionTag,
};
pub use two_pair::{
    two_pair_case_max, two_pair_gamma, two_pair_sweep, two_pair_table, TwoPairCase, TwoPairMax,
};

use serde::Serialize;

use crate::circle::{fill_positions_from_profile, CirclePoint, Instance};
use crate::mechanism::{expected_social_cost, Mechanism};
use crate::optimum::{argmin, fill_costs, optimum, OptResult};

/// `7 - 4 sqrt(2)`, the worst-case PCD ratio for five agents.
pub const ALPHA: f64 = 7.0 - 4.0 * std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaReport {
    pub sc: f64,
    pub opt: OptResult,
    pub gamma: f64,
}

/// `sc / opt`, with the zero-optimum case defined as 1.
#[inline]
pub fn ratio(sc: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        sc / opt
    } else {
        1.0
    }
}

pub fn gamma(inst: &Instance, mechanism: &Mechanism) -> GammaReport {
    let outcome = mechanism.outcome(inst);
    let sc = expected_social_cost(inst, &outcome);
    let opt = optimum(inst);
    GammaReport { sc, opt, gamma: ratio(sc, opt.cost) }
}

/// PCD ratio of an instance.
pub fn pcd_gamma(inst: &Instance) -> f64 {
    gamma(inst, &Mechanism::Pcd).gamma
}

/// Allocation-free PCD ratio evaluation for search loops. Follows the same
/// path as [`gamma`]: profile to positions, positions to facing arcs and
/// costs, then `sum C_i P_i / min C_i`.
#[derive(Debug, Default, Clone)]
pub struct PcdEvaluator {
    positions: Vec<CirclePoint>,
    costs: Vec<f64>,
}

impl PcdEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gamma_of_profile(&mut self, p: &[f64]) -> f64 {
        fill_positions_from_profile(p, &mut self.positions);
        self.gamma_of_positions()
    }

    /// Positions must be in clockwise cyclic order.
    pub fn gamma_of(&mut self, positions: &[CirclePoint]) -> f64 {
        self.positions.clear();
        self.positions.extend_from_slice(positions);
        self.gamma_of_positions()
    }

    fn gamma_of_positions(&mut self) -> f64 {
        let pos = &self.positions;
        let n = pos.len();
        let half = (n - 1) / 2;
        fill_costs(pos, &mut self.costs);
        // arc j runs from agent j to j+1 and is faced by agent j - half
        let mut sc = 0.0;
        let mut tour = 0.0;
        for j in 0..n - 1 {
            let arc = pos[j].clockwise_to(pos[j + 1]);
            tour += arc;
            sc += arc * self.costs[(j + n - half) % n];
        }
        sc += (1.0 - tour).max(0.0) * self.costs[(n - 1 + n - half) % n];
        ratio(sc, argmin(&self.costs).cost)
    }
}
