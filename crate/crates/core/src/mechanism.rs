//! Randomized mechanisms as exact distributions over the agents' locations.

use serde::{Deserialize, Serialize};

use crate::circle::{circle_distance, CirclePoint, Instance};
use crate::error::{Error, Result};

/// Discrete distribution with one support entry per agent. Coincident agents
/// keep separate entries; use [`Outcome::merged`] for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    support: Vec<(CirclePoint, f64)>,
}

impl Outcome {
    pub fn new(support: Vec<(CirclePoint, f64)>) -> Result<Self> {
        if support.iter().any(|(_, p)| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidParams("outcome probabilities must be nonnegative".into()));
        }
        let total: f64 = support.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!("outcome probabilities sum to {total}")));
        }
        Ok(Self { support })
    }

    pub fn support(&self) -> &[(CirclePoint, f64)] {
        &self.support
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.support.iter().map(|(_, p)| *p).collect()
    }

    /// Support with coincident points accumulated, sorted by position.
    pub fn merged(&self) -> Vec<(CirclePoint, f64)> {
        let mut pts = self.support.clone();
        pts.sort_by(|a, b| a.0.value().total_cmp(&b.0.value()));
        let mut out: Vec<(CirclePoint, f64)> = Vec::with_capacity(pts.len());
        for (x, p) in pts {
            match out.last_mut() {
                Some((y, q)) if *y == x => *q += p,
                _ => out.push((x, p)),
            }
        }
        out
    }
}

/// Proportional Circle Distance: agent `i` is selected with probability equal
/// to the length of the arc facing it.
pub fn pcd(inst: &Instance) -> Outcome {
    let p = inst.facing_profile();
    Outcome {
        support: inst.positions().iter().copied().zip(p.as_slice().iter().copied()).collect(),
    }
}

pub fn random_dictator(inst: &Instance) -> Outcome {
    let w = 1.0 / inst.len() as f64;
    Outcome {
        support: inst.positions().iter().map(|&x| (x, w)).collect(),
    }
}

/// `lambda * PCD + (1 - lambda) * RD`, per agent.
pub fn mixture(inst: &Instance, lambda: f64) -> Result<Outcome> {
    check_lambda(lambda)?;
    let w = (1.0 - lambda) / inst.len() as f64;
    let p = inst.facing_profile();
    Ok(Outcome {
        support: inst
            .positions()
            .iter()
            .zip(p.as_slice())
            .map(|(&x, &pi)| (x, lambda * pi + w))
            .collect(),
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("mixing weight must lie in [0, 1], got {lambda}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mechanism", rename_all = "lowercase")]
pub enum Mechanism {
    #[default]
    Pcd,
    #[serde(rename = "rd")]
    RandomDictator,
    #[serde(rename = "mix")]
    Mixture { lambda: f64 },
}

impl Mechanism {
    pub fn mixture(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self::Mixture { lambda })
    }

    pub fn outcome(&self, inst: &Instance) -> Outcome {
        match *self {
            Mechanism::Pcd => pcd(inst),
            Mechanism::RandomDictator => random_dictator(inst),
            // lambda is validated by the constructor; clamp stray values
            Mechanism::Mixture { lambda } => {
                mixture(inst, lambda.clamp(0.0, 1.0)).expect("clamped mixing weight")
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::Pcd => "pcd",
            Mechanism::RandomDictator => "rd",
            Mechanism::Mixture { .. } => "mix",
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            Mechanism::Pcd => 1.0,
            Mechanism::RandomDictator => 0.0,
            Mechanism::Mixture { lambda } => lambda,
        }
    }
}

/// Expected distance from agent `i` to the facility.
pub fn agent_expected_cost(inst: &Instance, outcome: &Outcome, i: usize) -> Result<f64> {
    inst.check_index(i)?;
    Ok(expected_distance(inst.position(i), outcome))
}

fn expected_distance(x: CirclePoint, outcome: &Outcome) -> f64 {
    outcome.support.iter().map(|&(z, p)| p * circle_distance(x, z)).sum()
}

/// Expected social cost `sum_j prob_j * SC(x, support_j)`.
pub fn expected_social_cost(inst: &Instance, outcome: &Outcome) -> f64 {
    outcome
        .support
        .iter()
        .map(|&(z, p)| {
            if p == 0.0 {
                return 0.0;
            }
            p * inst.positions().iter().map(|&x| circle_distance(x, z)).sum::<f64>()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeResult {
    pub truthful_cost: f64,
    pub deviation_cost: f64,
}

impl ProbeResult {
    /// Gain from misreporting; positive means the deviation helped.
    pub fn gain(&self) -> f64 {
        self.truthful_cost - self.deviation_cost
    }
}

/// Agent `i`'s expected PCD cost when truthful versus when reporting
/// `misreport`, both measured from its true location.
pub fn strategyproofness_probe(
    inst: &Instance,
    i: usize,
    misreport: CirclePoint,
) -> Result<ProbeResult> {
    inst.check_index(i)?;
    let truth = inst.position(i);
    let truthful_cost = expected_distance(truth, &pcd(inst));
    let deviated = inst.with_position(i, misreport)?;
    let deviation_cost = expected_distance(truth, &pcd(&deviated));
    Ok(ProbeResult { truthful_cost, deviation_cost })
}
