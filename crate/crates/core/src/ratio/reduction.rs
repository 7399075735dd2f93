//! Large-arc reduction for five agents: slide each isolated flanking agent
//! toward a neighbour, in the direction in which the ratio does not
//! decrease, until the instance has two coincident pairs or three
//! coincident agents.
//!
//! The instance is relabeled so that the agent facing the large arc is
//! index 2 and rotated so that agent 0 sits at the origin. All agents then
//! lie in `[0, 1/2]` and every distance is linear in a flank's position, so
//! the social cost is affine along a slide and the ratio is monotone.

use serde::Serialize;

use crate::circle::{CirclePoint, Instance};
use crate::error::{Error, Result};
use crate::optimum::{cost_vector, TIE_TOLERANCE};

use super::pcd_gamma;

const N: usize = 5;
const CENTER: usize = 2;

/// First-order rates of change when agent `agent` moves by `sigma` per unit
/// `eps` (positive is clockwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlideRates {
    pub agent: usize,
    pub sigma: f64,
    pub d_costs: [f64; N],
    pub d_profile: [f64; N],
    /// Derivative of the social cost.
    pub a: f64,
    /// Numerator of the ratio's derivative, `a C_2 - SC dC_2`.
    pub numerator: f64,
    /// Second-order term `sum dC_i dP_i`; zero whenever the slide is valid.
    pub curvature: f64,
}

/// Rates for moving `agent` of a reduced-frame instance.
pub fn slide_rates(inst: &Instance, agent: usize, sigma: f64) -> Result<SlideRates> {
    if inst.len() != N {
        return Err(Error::PreconditionViolation(format!(
            "reduction needs five agents, got {}",
            inst.len()
        )));
    }
    inst.check_index(agent)?;
    let x = inst.values();
    let mut d_costs = [0.0; N];
    for i in (0..N).filter(|&i| i != agent) {
        d_costs[i] = if x[i] < x[agent] || (x[i] == x[agent] && i < agent) { sigma } else { -sigma };
        d_costs[agent] += d_costs[i];
    }
    let half = (N - 1) / 2;
    let mut d_profile = [0.0; N];
    d_profile[(agent + 2 * N - 1 - half) % N] += sigma;
    d_profile[(agent + N - half) % N] -= sigma;
    let c = cost_vector(inst);
    let p = inst.facing_profile();
    let sc: f64 = (0..N).map(|i| c[i] * p[i]).sum();
    let a: f64 = (0..N).map(|i| d_costs[i] * p[i] + c[i] * d_profile[i]).sum();
    let curvature = (0..N).map(|i| d_costs[i] * d_profile[i]).sum();
    Ok(SlideRates {
        agent,
        sigma,
        d_costs,
        d_profile,
        a,
        numerator: a * c[CENTER] - sc * d_costs[CENTER],
        curvature,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionLeg {
    /// Moving agent, in the reduced labeling.
    pub agent: usize,
    /// Neighbour that the agent slides onto.
    pub target: usize,
    pub start: Instance,
    pub end: Instance,
    pub gamma_start: f64,
    pub gamma_end: f64,
}

impl ReductionLeg {
    /// The instance a fraction `f` of the way along the slide.
    pub fn at(&self, f: f64) -> Instance {
        let from = self.start.position(self.agent).value();
        let to = self.end.position(self.agent).value();
        let mut pts = self.start.positions().to_vec();
        pts[self.agent] = CirclePoint::wrapping(from + f * (to - from)).expect("finite position");
        Instance::from_cyclic_unchecked(pts)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    /// Original index of the agent facing the large arc.
    pub large_arc_agent: usize,
    /// `labels[i]` is the original index of reduced agent `i`.
    pub labels: [usize; N],
    pub initial: Instance,
    pub legs: Vec<ReductionLeg>,
    pub gamma_initial: f64,
    pub gamma_final: f64,
}

impl Reduction {
    pub fn final_instance(&self) -> &Instance {
        self.legs.last().map_or(&self.initial, |l| &l.end)
    }

    /// Initial instance followed by the end of every leg.
    pub fn path(&self) -> Vec<&Instance> {
        std::iter::once(&self.initial).chain(self.legs.iter().map(|l| &l.end)).collect()
    }
}

fn coincident(x: &[f64], i: usize, j: usize) -> bool {
    (x[i] - x[j]).abs() <= TIE_TOLERANCE
}

/// Two coincident pairs, or three or more agents at one point.
pub fn is_reduced(inst: &Instance) -> bool {
    let mut x = inst.values();
    x.sort_by(f64::total_cmp);
    let mut runs = Vec::new();
    let mut len = 1;
    for i in 1..x.len() {
        if (x[i] - x[i - 1]).abs() <= TIE_TOLERANCE {
            len += 1;
        } else {
            runs.push(len);
            len = 1;
        }
    }
    runs.push(len);
    // wrap-around: first and last runs may share a point at the origin
    if runs.len() > 1 && (x[0] + 1.0 - x[x.len() - 1]) <= TIE_TOLERANCE {
        let last = runs.pop().unwrap();
        runs[0] += last;
    }
    runs.iter().any(|&r| r >= 3) || runs.iter().filter(|&&r| r == 2).count() >= 2
}

/// Runs the reduction. Requires five agents and a facing arc of at least 1/2.
pub fn large_arc_reduce(inst: &Instance) -> Result<Reduction> {
    if inst.len() != N {
        return Err(Error::PreconditionViolation(format!(
            "reduction needs five agents, got {}",
            inst.len()
        )));
    }
    let (large, p) = inst.facing_profile().max_entry();
    if p < 0.5 - TIE_TOLERANCE {
        return Err(Error::PreconditionViolation(format!(
            "largest facing arc is {p}, below one half"
        )));
    }
    let start = (large + N - CENTER) % N;
    let relabeled = inst.relabeled(start);
    let origin = relabeled.position(0);
    let frame: Vec<CirclePoint> = relabeled
        .positions()
        .iter()
        .map(|&x| CirclePoint::wrapping(origin.clockwise_to(x)).expect("finite"))
        .collect();
    let initial = Instance::from_cyclic_unchecked(frame);
    let labels = std::array::from_fn(|i| (start + i) % N);
    let gamma_initial = pcd_gamma(&initial);
    let mut legs = Vec::new();
    let mut current = initial.clone();
    if !is_reduced(&current) {
        for agent in [1, 3] {
            let x = current.values();
            let isolated = !coincident(&x, agent, agent - 1) && !coincident(&x, agent, agent + 1);
            if !isolated || is_reduced(&current) {
                continue;
            }
            let outward = if agent == 1 { 0 } else { 4 };
            let sigma_out = if agent == 1 { -1.0 } else { 1.0 };
            let rates = slide_rates(&current, agent, sigma_out)?;
            let target = if rates.numerator >= 0.0 { outward } else { CENTER };
            let mut pts = current.positions().to_vec();
            pts[agent] = pts[target];
            let end = Instance::from_cyclic_unchecked(pts);
            legs.push(ReductionLeg {
                agent,
                target,
                gamma_start: pcd_gamma(&current),
                gamma_end: pcd_gamma(&end),
                start: current,
                end: end.clone(),
            });
            current = end;
        }
    }
    let gamma_final = pcd_gamma(&current);
    Ok(Reduction { large_arc_agent: large, labels, initial, legs, gamma_initial, gamma_final })
}
