use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use super::{check_odd_n, Candidate, Scored, SearchMethod, SearchResult, TopK};
use crate::error::{Error, Result};
use crate::ratio::PcdEvaluator;

const BATCH: u64 = 4096;

/// Uniform point of the simplex: normalized independent Exp(1) draws.
pub fn dirichlet_profile<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let mut total = 0.0;
    for x in out.iter_mut() {
        *x = rng.sample::<f64, _>(Exp1);
        total += *x;
    }
    for x in out.iter_mut() {
        *x /= total;
    }
}

/// Generator for batch `batch` of a seeded run; batches are independent
/// streams so the result does not depend on scheduling.
pub(crate) fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Best `top` profiles among `samples` uniform draws.
pub fn random_search_top(
    n: usize,
    samples: u64,
    seed: u64,
    top: usize,
) -> Result<Vec<Scored>> {
    check_odd_n(n)?;
    if samples == 0 {
        return Err(Error::InvalidParams("at least one sample is required".into()));
    }
    let batches = samples.div_ceil(BATCH);
    let best = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(seed, b);
            let mut ev = PcdEvaluator::new();
            let mut best = TopK::new(top);
            let mut p = vec![0.0; n];
            let count = BATCH.min(samples - b * BATCH);
            for _ in 0..count {
                dirichlet_profile(&mut rng, &mut p);
                let g = ev.gamma_of_profile(&p);
                if best.admits(g) {
                    best.push(Candidate { gamma: g, profile: p.clone() });
                }
            }
            best
        })
        .reduce(|| TopK::new(top), TopK::merge);
    Ok(best.into_vec().into_iter().map(|c| (c.gamma, c.profile)).collect())
}

pub fn random_search(n: usize, samples: u64, seed: u64) -> Result<SearchResult> {
    let top = random_search_top(n, samples, seed, 1)?;
    let (_, profile) = top.into_iter().next().expect("at least one sample");
    SearchResult::emit(profile, samples, SearchMethod::Random)
}
