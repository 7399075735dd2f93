//! Sampled property suites. Each suite draws seeded random instances,
//! checks one structural claim, and reports the worst margin seen.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{ArcProfile, CirclePoint, Instance};
use crate::error::{Error, Result};
use crate::mechanism::strategyproofness_probe;
use crate::optimum::{cost_vector, grid_oracle_optimum, large_arc_rule, median_optimal_agent, optimum};
use crate::ratio::{
    equidistance_ball_bound, is_reduced, large_arc_reduce, pcd_gamma, region_formula,
    region_gamma, region_simplified_formula, regions_of, sc_bound_polynomial, RegionTag, ALPHA,
    SC_BOUND,
};
use crate::search::dirichlet_profile;

const BATCH: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OptAtAgent,
    Median,
    LargeArc,
    ScBound,
    Strategyproof,
    RegionEquiv,
    EpsBall,
    Reduction,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::OptAtAgent,
        Suite::Median,
        Suite::LargeArc,
        Suite::ScBound,
        Suite::Strategyproof,
        Suite::RegionEquiv,
        Suite::EpsBall,
        Suite::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OptAtAgent => "opt-at-agent",
            Suite::Median => "median",
            Suite::LargeArc => "large-arc",
            Suite::ScBound => "sc-bound",
            Suite::Strategyproof => "strategyproof",
            Suite::RegionEquiv => "region-equiv",
            Suite::EpsBall => "eps-ball",
            Suite::Reduction => "reduction",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn default_samples(self) -> u64 {
        match self {
            Suite::OptAtAgent => 10_000,
            Suite::Reduction => 1_000,
            Suite::ScBound => 1_000_000,
            _ => 100_000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteOptions {
    /// Accepted samples; filtered suites draw until this many pass the filter.
    pub samples: u64,
    pub seed: u64,
    /// Radius for the eps-ball suite.
    pub eps: f64,
    /// Grid spacing for the opt-at-agent oracle.
    pub resolution: f64,
}

impl SuiteOptions {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed, eps: 0.05, resolution: 1e-4 }
    }

    /// Rejects parameters `suite` cannot run with.
    pub fn validate(&self, suite: Suite) -> Result<()> {
        match suite {
            Suite::EpsBall => equidistance_ball_bound(self.eps).map(|_| ()),
            Suite::OptAtAgent if !(self.resolution > 0.0 && self.resolution <= 0.01) => Err(
                Error::InvalidParams(format!("grid resolution must lie in (0, 0.01], got {}", self.resolution)),
            ),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub positions: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: u64,
    pub violations: u64,
    /// Largest `lhs - rhs` over all checked inequalities; negative is slack.
    pub max_excess: f64,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    fn empty(suite: Suite) -> Self {
        Self { suite, checked: 0, violations: 0, max_excess: f64::NEG_INFINITY, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checked > 0
    }

    // order-preserving merge: the earliest counterexample wins
    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.violations += other.violations;
        self.max_excess = self.max_excess.max(other.max_excess);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    /// Records `lhs <= rhs + tol`.
    fn check(&mut self, inst: &Instance, lhs: f64, rhs: f64, tol: f64, what: &str) {
        self.checked += 1;
        let excess = lhs - rhs;
        self.max_excess = self.max_excess.max(excess);
        if excess.is_nan() || excess > tol {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(Counterexample {
                    positions: inst.values(),
                    detail: format!("{what}: {lhs} > {rhs} + {tol}"),
                });
            }
        }
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut s = format!(
            "{}: {verdict} ({} checks, {} violations, max excess {:e})",
            self.suite, self.checked, self.violations, self.max_excess
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!("\n  counterexample {:?}\n  {}", c.positions, c.detail));
        }
        s
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    match suite {
        Suite::OptAtAgent => batched(suite, opts, |rng, r, quota| {
            for _ in 0..quota {
                let inst = random_instance(rng, 5);
                let grid = grid_oracle_optimum(&inst, opts.resolution).expect("valid resolution");
                let best_agent = cost_vector(&inst).min();
                // the oracle may not beat the best agent by more than n * h
                r.check(&inst, best_agent - grid.cost, 5.0 * opts.resolution, 0.0, "grid improvement");
            }
        }),
        Suite::Median => batched(suite, opts, |rng, r, quota| {
            for k in 0..quota {
                let n = [3, 5, 7][k as usize % 3];
                let inst = random_instance(rng, n);
                let m = median_optimal_agent(&inst);
                let opt = optimum(&inst).cost;
                let c = cost_vector(&inst)[m.agent];
                r.check(&inst, if m.balanced { 0.0 } else { 1.0 }, 0.0, 0.0, "no balanced optimal agent");
                r.check(&inst, c, opt, 1e-12, "median agent is not optimal");
            }
        }),
        Suite::LargeArc => batched(suite, opts, |rng, r, quota| {
            let (mut large, mut opt_bound) = (0, 0);
            let mut p = [0.0; 5];
            while large < quota || opt_bound < quota {
                dirichlet_profile(rng, &mut p);
                let inst = from_profile(&p);
                let costs = cost_vector(&inst);
                let opt = costs.min();
                if large < quota {
                    if let Some(i) = large_arc_rule(&inst) {
                        r.check(&inst, costs[i], opt, 1e-12, "large-arc agent is not optimal");
                        large += 1;
                    }
                }
                if opt_bound < quota {
                    // relabel so the median-optimal agent is agent 3
                    let o = median_optimal_agent(&inst).agent;
                    let q = inst.relabeled((o + 3) % 5).facing_profile();
                    if q[0] + q[4] >= 0.5 {
                        r.check(&inst, 1.0, opt, 1e-12, "OPT below 1 with P1 + P5 >= 1/2");
                        r.check(&inst, pcd_gamma(&inst), ALPHA, 1e-9, "ratio above alpha");
                        opt_bound += 1;
                    }
                }
            }
        }),
        Suite::ScBound => batched(suite, opts, |rng, r, quota| {
            let mut p = [0.0; 5];
            for _ in 0..quota {
                dirichlet_profile(rng, &mut p);
                let inst = from_profile(&p);
                let prof = inst.facing_profile();
                let f = sc_bound_polynomial(&prof).expect("five entries");
                let g = crate::ratio::gamma(&inst, &crate::Mechanism::Pcd);
                r.check(&inst, g.sc, f, 1e-12, "SC above the bound polynomial");
                r.check(&inst, f, SC_BOUND, 1e-12, "bound polynomial above 1.2");
                if g.opt.cost >= 0.9 {
                    r.check(&inst, g.gamma, SC_BOUND / 0.9, 1e-12, "ratio above 1.2/0.9 with OPT >= 0.9");
                }
            }
        }),
        Suite::Strategyproof => batched(suite, opts, |rng, r, quota| {
            for k in 0..quota {
                let n = [3, 5, 7][k as usize % 3];
                let inst = random_instance(rng, n);
                let i = rng.random_range(0..n);
                let lie = random_point(rng);
                let probe = strategyproofness_probe(&inst, i, lie).expect("valid agent");
                r.check(&inst, probe.truthful_cost, probe.deviation_cost, 1e-9, "profitable misreport");
            }
        }),
        Suite::RegionEquiv => batched(suite, opts, |rng, r, quota| {
            let mut counts = [0u64; 4];
            let mut p = [0.0; 5];
            while counts.iter().any(|&c| c < quota) {
                dirichlet_profile(rng, &mut p);
                for shift in 0..5 {
                    let q = ArcProfile::new((0..5).map(|i| p[(i + shift) % 5]).collect())
                        .expect("valid profile");
                    for region in regions_of(&q).expect("five entries") {
                        let slot = RegionTag::ALL.iter().position(|&t| t == region).unwrap();
                        if counts[slot] >= quota {
                            continue;
                        }
                        counts[slot] += 1;
                        let inst = Instance::from_profile(&q).expect("valid profile");
                        let direct = pcd_gamma(&inst);
                        let g = region_gamma(&q, region).expect("member");
                        r.check(&inst, (g - direct).abs(), 0.0, 1e-9, "regional formula differs");
                        if let Some(s) = region_simplified_formula(&q, region).expect("five entries") {
                            let full = region_formula(&q, region).expect("five entries");
                            r.check(&inst, (s - full).abs(), 0.0, 1e-9, "simplified form differs");
                        }
                    }
                }
            }
        }),
        Suite::EpsBall => {
            let bound = equidistance_ball_bound(opts.eps).expect("validated radius");
            batched(suite, opts, move |rng, r, quota| {
                let mut done = 0;
                let mut p = [0.0; 5];
                while done < quota {
                    let mut rest = 1.0;
                    for x in p.iter_mut().take(4) {
                        *x = 0.2 + rng.random_range(-opts.eps..=opts.eps);
                        rest -= *x;
                    }
                    p[4] = rest;
                    if (rest - 0.2).abs() > opts.eps || rest < 0.0 {
                        continue;
                    }
                    let inst = from_profile(&p);
                    r.check(&inst, pcd_gamma(&inst), bound, 1e-9, "ratio above the ball bound");
                    done += 1;
                }
            })
        }
        Suite::Reduction => batched(suite, opts, |rng, r, quota| {
            let mut done = 0;
            let mut p = [0.0; 5];
            while done < quota {
                dirichlet_profile(rng, &mut p);
                if p.iter().all(|&x| x < 0.5) {
                    continue;
                }
                let inst = from_profile(&p);
                let red = large_arc_reduce(&inst).expect("large arc present");
                done += 1;
                r.check(&inst, if is_reduced(red.final_instance()) { 0.0 } else { 1.0 }, 0.0, 0.0, "not reduced");
                r.check(&inst, red.legs.len() as f64, 4.0, 0.0, "too many legs");
                r.check(&inst, red.gamma_initial, red.gamma_final, 1e-9, "ratio decreased");
                for leg in &red.legs {
                    let mut prev = leg.gamma_start;
                    for k in 1..=8 {
                        let g = pcd_gamma(&leg.at(k as f64 / 8.0));
                        r.check(&inst, prev, g, 1e-9, "ratio decreased along a leg");
                        prev = g;
                    }
                }
            }
        }),
    }
}

fn batched<F>(suite: Suite, opts: &SuiteOptions, body: F) -> SuiteReport
where
    F: Fn(&mut ChaCha8Rng, &mut SuiteReport, u64) + Sync,
{
    let batches = opts.samples.div_ceil(BATCH);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = crate::search::batch_rng(opts.seed, b);
            let mut r = SuiteReport::empty(suite);
            body(&mut rng, &mut r, BATCH.min(opts.samples - b * BATCH));
            r
        })
        .reduce(|| SuiteReport::empty(suite), SuiteReport::merge)
}

fn random_point(rng: &mut ChaCha8Rng) -> CirclePoint {
    CirclePoint::wrapping(rng.random::<f64>()).expect("finite")
}

/// Uniform positions; half of the instances are snapped to a coarse grid so
/// that coincident and antipodal agents occur.
fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let snap = rng.random_bool(0.5);
    let pts: Vec<CirclePoint> = (0..n)
        .map(|_| {
            let x = rng.random::<f64>();
            let x = if snap { (x * 20.0).floor() / 20.0 } else { x };
            CirclePoint::wrapping(x).expect("finite")
        })
        .collect();
    Instance::canonicalize(&pts).expect("odd agent count")
}

fn from_profile(p: &[f64]) -> Instance {
    Instance::from_profile(&ArcProfile::new(p.to_vec()).expect("simplex sample")).expect("odd length")
}
