//! Worst-case search over arc profiles.
//!
//! The ratio depends on an instance only up to rotation, so every search
//! works on facing profiles. Results are deterministic for fixed inputs:
//! parallel reductions break ties toward the lexicographically smaller
//! profile.

mod curve;
mod grid;
mod hybrid;
mod random;
mod refine;

pub use curve::{curve_csv, hypothesis_dataset, CurveBudget, CurvePoint, CURVE_CSV_HEADER, MIX_BOUND};
pub use grid::{grid_search, grid_search_top, lattice_size, Scored};
pub use hybrid::{hybrid_search, HybridConfig};
pub use random::{dirichlet_profile, random_search, random_search_top};
pub use refine::refine;

pub(crate) use random::batch_rng;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::circle::{ArcProfile, Instance};
use crate::error::{Error, Result};
use crate::ratio::pcd_gamma;

/// Default cap on the number of ratio evaluations of a single search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMethod {
    Grid,
    Random,
    Refine,
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_gamma: f64,
    pub best_profile: ArcProfile,
    pub evaluations: u64,
    pub method: SearchMethod,
}

impl SearchResult {
    /// Recomputes the ratio of `profile` through the full evaluation pipeline.
    pub(crate) fn emit(profile: Vec<f64>, evaluations: u64, method: SearchMethod) -> Result<Self> {
        let best_profile = ArcProfile::new(profile)?;
        let best_gamma = pcd_gamma(&Instance::from_profile(&best_profile)?);
        Ok(Self { best_gamma, best_profile, evaluations, method })
    }
}

pub(crate) fn check_odd_n(n: usize) -> Result<()> {
    crate::circle::check_agent_count(n)
}

/// Candidate profile with its ratio, ordered best first.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Candidate {
    pub gamma: f64,
    pub profile: Vec<f64>,
}

impl Candidate {
    /// `Less` means `self` ranks ahead of `other`.
    pub fn rank(&self, other: &Candidate) -> Ordering {
        other
            .gamma
            .total_cmp(&self.gamma)
            .then_with(|| lex_cmp(&self.profile, &other.profile))
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Bounded best-first collection of candidates.
#[derive(Debug, Clone)]
pub(crate) struct TopK {
    k: usize,
    items: Vec<Candidate>,
}

impl TopK {
    pub fn new(k: usize) -> Self {
        Self { k: k.max(1), items: Vec::new() }
    }

    /// Cheap pre-check before materializing a profile.
    pub fn admits(&self, gamma: f64) -> bool {
        self.items.len() < self.k || gamma >= self.items[self.items.len() - 1].gamma
    }

    pub fn push(&mut self, c: Candidate) {
        if !self.admits(c.gamma) {
            return;
        }
        let at = self.items.partition_point(|x| x.rank(&c) == Ordering::Less);
        if at >= self.k {
            return;
        }
        self.items.insert(at, c);
        self.items.truncate(self.k);
    }

    pub fn merge(mut self, other: TopK) -> TopK {
        for c in other.items {
            self.push(c);
        }
        self
    }

    pub fn into_vec(self) -> Vec<Candidate> {
        self.items
    }
}

pub(crate) fn check_budget(required: u64, cap: u64) -> Result<()> {
    if required > cap {
        Err(Error::BudgetExceeded { required, cap })
    } else {
        Ok(())
    }
}
