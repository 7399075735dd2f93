//! Ratio-versus-n curve: numerical worst cases next to the closed-form
//! hypothesis and the reference ratios of other mechanisms.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::refine::ascend;
use super::{check_budget, random_search_top, DEFAULT_BUDGET};
use crate::circle::Instance;
use crate::error::{Error, Result};
use crate::ratio::{clustering_max, gamma_hypothesis, pcd_gamma, PcdEvaluator};

/// Reference bound of the PCD and random dictator mixture.
pub const MIX_BOUND: f64 = 1.75;

pub const CURVE_CSV_HEADER: &str = "n,gamma_numeric,gamma_hypothesis,rd_ratio,mix_bound";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    /// Best ratio found; a lower bound on the true worst case.
    pub gamma_numeric: f64,
    /// Absent for `n = 3`, where the closed form is undefined.
    pub gamma_hypothesis: Option<f64>,
    pub rd_ratio: f64,
    pub mix_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveBudget {
    /// Random samples per agent count.
    pub samples: u64,
    pub seed: u64,
    /// Refinement rounds applied to the best random sample.
    pub iters: usize,
    pub cap: u64,
}

impl Default for CurveBudget {
    fn default() -> Self {
        Self { samples: 10_000, seed: 0, iters: 200, cap: DEFAULT_BUDGET }
    }
}

/// One row per odd `n` from 3 to `n_max`. Each row takes the larger of the
/// clustering-family maximum and a refined random search.
pub fn hypothesis_dataset(n_max: usize, budget: &CurveBudget) -> Result<Vec<CurvePoint>> {
    if n_max < 5 || n_max.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("n_max must be odd and at least 5, got {n_max}")));
    }
    let rows = (n_max - 1) / 2;
    check_budget(budget.samples.saturating_mul(rows as u64), budget.cap)?;
    (3..=n_max)
        .step_by(2)
        .map(|n| {
            let k = (n - 1) / 2;
            let cluster = clustering_max(k)?;
            let mut best = pcd_gamma(&Instance::clustering(k, cluster.t)?);
            if budget.samples > 0 {
                let seed = budget.seed.wrapping_add(n as u64);
                let top = random_search_top(n, budget.samples, seed, 1)?;
                let (_, p) = top.into_iter().next().expect("nonempty");
                let (p, _) = ascend(p, 0.01, 0.5, budget.iters);
                best = best.max(PcdEvaluator::new().gamma_of_profile(&p));
            }
            Ok(CurvePoint {
                n,
                gamma_numeric: best,
                gamma_hypothesis: if n >= 5 { Some(gamma_hypothesis(n)?) } else { None },
                rd_ratio: 2.0 - 2.0 / n as f64,
                mix_bound: MIX_BOUND,
            })
        })
        .collect()
}

pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in points {
        let hyp = p.gamma_hypothesis.map(|h| h.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", p.n, p.gamma_numeric, hyp, p.rd_ratio, p.mix_bound)
            .expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ALPHA;

    #[test]
    fn small_curve() {
        let b = CurveBudget { samples: 2_000, seed: 5, iters: 50, ..Default::default() };
        let pts = hypothesis_dataset(9, &b).unwrap();
        assert_eq!(pts.iter().map(|p| p.n).collect::<Vec<_>>(), vec![3, 5, 7, 9]);
        assert!(pts[0].gamma_hypothesis.is_none());
        assert!((pts[0].gamma_numeric - 1.25).abs() < 1e-9);
        assert!((pts[1].gamma_numeric - ALPHA).abs() < 1e-4);
        assert!((pts[1].gamma_hypothesis.unwrap() - ALPHA).abs() < 1e-12);
        assert!((pts[1].rd_ratio - 1.6).abs() < 1e-15);
        assert!(pts[2].gamma_numeric >= 1.401_92 - 1e-6);
        let csv = curve_csv(&pts);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CURVE_CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("3,") && lines[1].contains(",,"));
    }

    #[test]
    fn rejects_bad_n_max() {
        assert!(hypothesis_dataset(3, &CurveBudget::default()).is_err());
        assert!(hypothesis_dataset(8, &CurveBudget::default()).is_err());
        let tight = CurveBudget { cap: 10, ..Default::default() };
        assert!(matches!(hypothesis_dataset(7, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
