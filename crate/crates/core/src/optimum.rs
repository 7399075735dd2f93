//! Social-cost vector, the optimal facility location, and the structural
//! characterizations of the optimum (optimum at an agent, median-optimal
//! agents, the large-arc rule).

use serde::Serialize;

use crate::circle::{circle_distance, CirclePoint, Instance};
use crate::error::{Error, Result};

/// Tolerance for treating two costs, offsets or arcs as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// `c[i]` is the social cost of placing the facility at agent `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CostVector(Vec<f64>);

impl CostVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl std::ops::Index<usize> for CostVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn fill_costs(positions: &[CirclePoint], out: &mut Vec<f64>) {
    let n = positions.len();
    out.clear();
    out.resize(n, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = circle_distance(positions[i], positions[j]);
            out[i] += d;
            out[j] += d;
        }
    }
}

pub fn cost_vector(inst: &Instance) -> CostVector {
    let mut c = Vec::new();
    fill_costs(inst.positions(), &mut c);
    CostVector(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptResult {
    /// Smallest agent index attaining the minimum.
    pub agent: usize,
    pub cost: f64,
}

/// Smallest index whose cost is within the tie tolerance of the minimum.
pub(crate) fn argmin(costs: &[f64]) -> OptResult {
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = TIE_TOLERANCE * min.max(1.0);
    let agent = costs.iter().position(|&c| c <= min + tol).unwrap_or(0);
    OptResult { agent, cost: costs[agent] }
}

/// The optimum over all agent locations; the optimum over the whole circle is
/// always attained at an agent.
pub fn optimum(inst: &Instance) -> OptResult {
    argmin(cost_vector(inst).as_slice())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridOptimum {
    pub position: CirclePoint,
    pub cost: f64,
}

/// Brute-force minimum of `F(z) = sum_i d(x_i, z)` over the grid
/// `{0, h, 2h, ...}` together with every agent position and antipode.
pub fn grid_oracle_optimum(inst: &Instance, resolution: f64) -> Result<GridOptimum> {
    if !(resolution > 0.0 && resolution <= 0.01) {
        return Err(Error::InvalidParams(format!(
            "grid resolution must lie in (0, 0.01], got {resolution}"
        )));
    }
    let social = |z: CirclePoint| inst.positions().iter().map(|&x| circle_distance(x, z)).sum::<f64>();
    let steps = (1.0 / resolution).ceil() as usize;
    let grid = (0..steps).map(|k| k as f64 * resolution).filter(|&z| z < 1.0);
    let breakpoints = inst
        .positions()
        .iter()
        .flat_map(|&x| [x.value(), x.antipode().value()]);
    let mut best = GridOptimum { position: CirclePoint::ZERO, cost: f64::INFINITY };
    for z in grid.chain(breakpoints) {
        let p = CirclePoint::wrapping(z)?;
        let cost = social(p);
        if cost < best.cost || (cost == best.cost && p.value() < best.position.value()) {
            best = GridOptimum { position: p, cost };
        }
    }
    Ok(best)
}

/// A median-optimal agent and the side assignment of every other agent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedianAssignment {
    pub agent: usize,
    pub clockwise: Vec<usize>,
    pub counterclockwise: Vec<usize>,
    /// False only if no optimal agent admits a balanced assignment, which the
    /// theory rules out; kept so numerical failures surface instead of hiding.
    pub balanced: bool,
}

/// Tries to assign the agents tied with `o` (coincident or antipodal) so that
/// `(n-1)/2` agents lie on each side of it.
pub fn balanced_assignment(inst: &Instance, o: usize) -> Option<MedianAssignment> {
    let n = inst.len();
    let half = (n - 1) / 2;
    let origin = inst.position(o);
    let mut cw = Vec::new();
    let mut ccw = Vec::new();
    let mut tied = Vec::new();
    for j in (0..n).filter(|&j| j != o) {
        let off = origin.clockwise_to(inst.position(j));
        if off <= TIE_TOLERANCE || off >= 1.0 - TIE_TOLERANCE || (off - 0.5).abs() <= TIE_TOLERANCE {
            tied.push(j);
        } else if off < 0.5 {
            cw.push(j);
        } else {
            ccw.push(j);
        }
    }
    if cw.len() > half || ccw.len() > half {
        return None;
    }
    for j in tied {
        if cw.len() < half {
            cw.push(j);
        } else {
            ccw.push(j);
        }
    }
    cw.sort_unstable();
    ccw.sort_unstable();
    Some(MedianAssignment { agent: o, clockwise: cw, counterclockwise: ccw, balanced: true })
}

/// Smallest-index optimal agent admitting a balanced tie assignment.
pub fn median_optimal_agent(inst: &Instance) -> MedianAssignment {
    let costs = cost_vector(inst);
    let min = costs.min();
    let tol = TIE_TOLERANCE * min.max(1.0);
    let optimal = (0..inst.len()).filter(|&i| costs[i] <= min + tol);
    for o in optimal {
        if let Some(a) = balanced_assignment(inst, o) {
            return a;
        }
    }
    let opt = argmin(costs.as_slice());
    MedianAssignment {
        agent: opt.agent,
        clockwise: Vec::new(),
        counterclockwise: Vec::new(),
        balanced: false,
    }
}

/// Agent whose facing arc is at least one half, if any (largest arc first,
/// then smallest index). Such an agent is always optimal.
pub fn large_arc_rule(inst: &Instance) -> Option<usize> {
    let (i, p) = inst.facing_profile().max_entry();
    (p >= 0.5 - TIE_TOLERANCE).then_some(i)
}
