//! Closed forms for two coincident pairs plus a lone agent, positions
//! `(0, 0, s, s+t, s+t)` with remaining arc `u = 1 - t - s`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwoPairCase {
    A1,
    #[serde(rename = "A2_opt1")]
    A2Opt1,
    #[serde(rename = "A2_opt3")]
    A2Opt3,
    B1,
    B2,
}

impl TwoPairCase {
    pub const ALL: [TwoPairCase; 5] =
        [TwoPairCase::A1, TwoPairCase::A2Opt1, TwoPairCase::A2Opt3, TwoPairCase::B1, TwoPairCase::B2];

    pub fn name(self) -> &'static str {
        match self {
            TwoPairCase::A1 => "A1",
            TwoPairCase::A2Opt1 => "A2_opt1",
            TwoPairCase::A2Opt3 => "A2_opt3",
            TwoPairCase::B1 => "B1",
            TwoPairCase::B2 => "B2",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(name))
    }

    /// Whether `(s, t)` satisfies the ordering constraints of the case.
    ///
    /// The B cases only require `t` to be the largest arc; the lone agent's
    /// two arcs may come in either order.
    pub fn contains(self, s: f64, t: f64) -> bool {
        if !(s.is_finite() && t.is_finite()) || s < -TOL || t < -TOL || s + t > 1.0 + TOL {
            return false;
        }
        let u = 1.0 - t - s;
        let a = u >= t - TOL && t >= s - TOL;
        let b = t >= u - TOL && t >= s - TOL;
        match self {
            TwoPairCase::A1 => a && u >= 0.5 - TOL,
            TwoPairCase::A2Opt1 => a && u <= 0.5 + TOL && c1(s, t) <= c3(s, t) + TOL,
            TwoPairCase::A2Opt3 => a && u <= 0.5 + TOL && c3(s, t) <= c1(s, t) + TOL,
            TwoPairCase::B1 => b && t >= 0.5 - TOL,
            TwoPairCase::B2 => b && t <= 0.5 + TOL,
        }
    }

    /// The case containing `(s, t)`, first in [`TwoPairCase::ALL`] order.
    pub fn classify(s: f64, t: f64) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.contains(s, t))
    }

    fn formula(self, s: f64, t: f64) -> f64 {
        let shared = -4.0 * s * s - 4.0 * t * t - 6.0 * t * s + 4.0 * t + 4.0 * s;
        let (num, den) = match self {
            TwoPairCase::A1 => (2.0 * t * s + 2.0 * s + 2.0 * t, 2.0 * s + 2.0 * t),
            TwoPairCase::A2Opt1 | TwoPairCase::B2 => (shared, 2.0 - 2.0 * t - s),
            TwoPairCase::A2Opt3 => (shared, 2.0 * t + 2.0 * s),
            TwoPairCase::B1 => {
                (-4.0 * s * s - 4.0 * s * t + 3.0 * s - 2.0 * t + 2.0, 2.0 - 2.0 * t - s)
            }
        };
        if den == 0.0 {
            1.0
        } else {
            num / den
        }
    }
}

impl fmt::Display for TwoPairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// costs of the pair at 0 and of the lone agent when u <= 1/2
fn c1(s: f64, t: f64) -> f64 {
    2.0 - 2.0 * t - s
}

fn c3(s: f64, t: f64) -> f64 {
    2.0 * t + 2.0 * s
}

/// Case formula for the PCD ratio.
pub fn two_pair_gamma(s: f64, t: f64, case: TwoPairCase) -> Result<f64> {
    if !case.contains(s, t) {
        return Err(Error::CaseViolation { case, s, t });
    }
    Ok(case.formula(s, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPairMax {
    pub case: TwoPairCase,
    pub s: f64,
    pub t: f64,
    pub gamma: f64,
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step <= 0.01 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("sweep step must lie in (0, 0.01], got {step}")))
    }
}

fn better(a: TwoPairMax, b: TwoPairMax) -> TwoPairMax {
    if b.gamma > a.gamma || (b.gamma == a.gamma && (b.s, b.t) < (a.s, a.t)) {
        b
    } else {
        a
    }
}

/// Grid maximum of one case followed by a compass-search refinement.
pub fn two_pair_case_max(case: TwoPairCase, step: f64) -> Result<TwoPairMax> {
    check_step(step)?;
    let m = (1.0 / step).ceil() as usize;
    let start = TwoPairMax { case, s: 0.0, t: 0.0, gamma: f64::NEG_INFINITY };
    let grid = (0..=m)
        .into_par_iter()
        .map(|i| {
            let s = (i as f64 * step).min(1.0);
            let mut best = start;
            for j in 0..=m {
                let t = (j as f64 * step).min(1.0);
                if case.contains(s, t) {
                    best = better(best, TwoPairMax { case, s, t, gamma: case.formula(s, t) });
                }
            }
            best
        })
        .reduce(|| start, better);
    if grid.gamma == f64::NEG_INFINITY {
        return Err(Error::InvalidParams(format!("no grid point of spacing {step} lies in {case}")));
    }
    Ok(compass(grid, step))
}

fn compass(mut best: TwoPairMax, step: f64) -> TwoPairMax {
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
    ];
    let mut h = step;
    while h > 1e-14 {
        let mut moved = false;
        for (ds, dt) in DIRS {
            let (s, t) = (best.s + ds * h, best.t + dt * h);
            if best.case.contains(s, t) {
                let g = best.case.formula(s, t);
                if g > best.gamma {
                    best = TwoPairMax { s, t, gamma: g, ..best };
                    moved = true;
                }
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    best
}

/// Per-case maxima in [`TwoPairCase::ALL`] order.
pub fn two_pair_table(step: f64) -> Result<Vec<TwoPairMax>> {
    TwoPairCase::ALL.into_iter().map(|c| two_pair_case_max(c, step)).collect()
}

/// Global maximum over all cases; near-ties go to the earlier case.
pub fn two_pair_sweep(step: f64) -> Result<TwoPairMax> {
    let table = two_pair_table(step)?;
    let top = table.iter().map(|m| m.gamma).fold(f64::NEG_INFINITY, f64::max);
    Ok(*table.iter().find(|m| m.gamma >= top - TOL).expect("nonempty table"))
}
