use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::refine::ascend;
use super::{
    check_budget, check_odd_n, grid_search_top, random_search_top, Candidate, SearchMethod,
    SearchResult, TopK, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::ratio::PcdEvaluator;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridConfig {
    pub n: usize,
    /// Lattice spacing; no grid stage when absent.
    pub grid: Option<f64>,
    /// Random samples; no random stage when zero.
    pub samples: u64,
    pub seed: u64,
    /// Number of candidates refined.
    pub top: usize,
    pub refine_step: f64,
    pub shrink: f64,
    pub iters: usize,
    pub budget: u64,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            n: 5,
            grid: Some(0.005),
            samples: 0,
            seed: 0,
            top: 100,
            refine_step: 0.01,
            shrink: 0.5,
            iters: 2_000,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Grid and random stages feed their best candidates to local refinement.
pub fn hybrid_search(cfg: &HybridConfig) -> Result<SearchResult> {
    check_odd_n(cfg.n)?;
    if cfg.grid.is_none() && cfg.samples == 0 {
        return Err(Error::InvalidParams("hybrid search needs a grid or random stage".into()));
    }
    check_budget(cfg.samples, cfg.budget)?;
    let mut pool = TopK::new(cfg.top);
    let mut evaluations = 0;
    if let Some(res) = cfg.grid {
        let (list, count) = grid_search_top(cfg.n, res, cfg.budget - cfg.samples, cfg.top)?;
        evaluations += count;
        for (gamma, profile) in list {
            pool.push(Candidate { gamma, profile });
        }
    }
    if cfg.samples > 0 {
        for (gamma, profile) in random_search_top(cfg.n, cfg.samples, cfg.seed, cfg.top)? {
            pool.push(Candidate { gamma, profile });
        }
        evaluations += cfg.samples;
    }
    let refined: Vec<(Candidate, u64)> = pool
        .into_vec()
        .into_par_iter()
        .map(|c| {
            let (p, count) = ascend(c.profile, cfg.refine_step, cfg.shrink, cfg.iters);
            let gamma = PcdEvaluator::new().gamma_of_profile(&p);
            (Candidate { gamma, profile: p }, count)
        })
        .collect();
    let mut best = TopK::new(1);
    for (c, count) in refined {
        evaluations += count;
        best.push(c);
    }
    let best = best.into_vec().pop().expect("nonempty pool");
    SearchResult::emit(best.profile, evaluations, SearchMethod::Hybrid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ALPHA;

    #[test]
    fn coarse_hybrid_reaches_alpha() {
        let cfg = HybridConfig { grid: Some(0.02), samples: 5_000, seed: 1, top: 10, ..Default::default() };
        let r = hybrid_search(&cfg).unwrap();
        assert!(r.best_gamma >= ALPHA - 1e-6, "{}", r.best_gamma);
        assert!(r.best_gamma <= ALPHA + 1e-9);
        assert_eq!(r, hybrid_search(&cfg).unwrap());
    }

    #[test]
    fn needs_a_stage() {
        let cfg = HybridConfig { grid: None, samples: 0, ..Default::default() };
        assert!(hybrid_search(&cfg).is_err());
    }
}
