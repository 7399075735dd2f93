//! Evaluation report shared by the CLI and the HTTP service.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circle::{CirclePoint, Instance};
use crate::error::Result;
use crate::mechanism::Mechanism;
use crate::optimum::{large_arc_rule, median_optimal_agent};
use crate::ratio::gamma;

/// Every quantity of one instance under one mechanism. Agent indices are
/// 1-based labels in clockwise order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub positions: Vec<f64>,
    pub arcs: Vec<f64>,
    pub facing: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub costs: Vec<f64>,
    pub sc: f64,
    pub opt_index: usize,
    pub opt_cost: f64,
    pub gamma: f64,
    pub median_optimal_index: usize,
    pub large_arc_index: Option<usize>,
    pub mechanism: String,
    pub lambda: f64,
}

impl EvaluationReport {
    pub fn new(inst: &Instance, mechanism: &Mechanism) -> Self {
        let g = gamma(inst, mechanism);
        Self {
            positions: inst.values(),
            arcs: inst.consecutive_arcs(),
            facing: inst.facing_profile().into_vec(),
            probabilities: mechanism.outcome(inst).probabilities(),
            costs: crate::optimum::cost_vector(inst).into_vec(),
            sc: g.sc,
            opt_index: g.opt.agent + 1,
            opt_cost: g.opt.cost,
            gamma: g.gamma,
            median_optimal_index: median_optimal_agent(inst).agent + 1,
            large_arc_index: large_arc_rule(inst).map(|i| i + 1),
            mechanism: mechanism.name().to_string(),
            lambda: mechanism.lambda(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        let _ = writeln!(s, "mechanism      {} (lambda = {})", self.mechanism, self.lambda);
        let _ = writeln!(s, "positions      {}", list(&self.positions));
        let _ = writeln!(s, "arcs           {}", list(&self.arcs));
        let _ = writeln!(s, "facing P       {}", list(&self.facing));
        let _ = writeln!(s, "probabilities  {}", list(&self.probabilities));
        let _ = writeln!(s, "costs C        {}", list(&self.costs));
        let _ = writeln!(s, "SC             {:.12}", self.sc);
        let _ = writeln!(s, "OPT            agent {} cost {:.12}", self.opt_index, self.opt_cost);
        let _ = writeln!(s, "gamma          {:.12}", self.gamma);
        let _ = writeln!(s, "median optimal agent {}", self.median_optimal_index);
        match self.large_arc_index {
            Some(i) => {
                let _ = writeln!(s, "large arc      agent {i}");
            }
            None => {
                let _ = writeln!(s, "large arc      none");
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("agent,position,arc,facing,probability,cost\n");
        for i in 0..self.positions.len() {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                i + 1,
                self.positions[i],
                self.arcs[i],
                self.facing[i],
                self.probabilities[i],
                self.costs[i]
            );
        }
        s
    }
}

/// Positions after reducing modulo one, with a note for every value that
/// had to be moved.
pub fn normalize_positions(values: &[f64]) -> Result<(Vec<CirclePoint>, Vec<String>)> {
    let mut notes = Vec::new();
    let mut pts = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        let p = CirclePoint::wrapping(v)?;
        if p.value() != v {
            notes.push(format!("position {} ({v}) normalized to {}", i + 1, p.value()));
        }
        pts.push(p);
    }
    Ok((pts, notes))
}

/// Parses a comma-separated list, naming the first token that is not a number.
pub fn parse_position_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',')
        .map(str::trim)
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("invalid position '{tok}'"))
        })
        .collect()
}
