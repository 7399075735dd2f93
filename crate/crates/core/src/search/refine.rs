use super::{SearchMethod, SearchResult};
use crate::circle::ArcProfile;
use crate::error::{Error, Result};
use crate::ratio::PcdEvaluator;

const MIN_STEP: f64 = 1e-15;

/// Coordinate-pair ascent: each round tries moving up to `step` of mass
/// from one entry to another and keeps strict improvements. A round without
/// improvement multiplies the step by `shrink`. At most `iters` rounds.
pub fn refine(start: &ArcProfile, step0: f64, shrink: f64, iters: usize) -> Result<SearchResult> {
    if !(step0 > 0.0 && step0 <= 1.0) {
        return Err(Error::InvalidParams(format!("initial step must lie in (0, 1], got {step0}")));
    }
    if !(shrink > 0.0 && shrink < 1.0) {
        return Err(Error::InvalidParams(format!("shrink factor must lie in (0, 1), got {shrink}")));
    }
    crate::circle::check_agent_count(start.len())?;
    let (p, evaluations) = ascend(start.as_slice().to_vec(), step0, shrink, iters);
    SearchResult::emit(p, evaluations, SearchMethod::Refine)
}

pub(crate) fn ascend(mut p: Vec<f64>, step0: f64, shrink: f64, iters: usize) -> (Vec<f64>, u64) {
    let n = p.len();
    let mut ev = PcdEvaluator::new();
    let mut best = ev.gamma_of_profile(&p);
    let mut evaluations = 1;
    let mut step = step0;
    let mut trial = p.clone();
    for _ in 0..iters {
        if step < MIN_STEP {
            break;
        }
        let mut improved = false;
        for from in 0..n {
            for to in 0..n {
                if from == to || p[from] == 0.0 {
                    continue;
                }
                let delta = step.min(p[from]);
                trial.copy_from_slice(&p);
                trial[from] -= delta;
                trial[to] += delta;
                let g = ev.gamma_of_profile(&trial);
                evaluations += 1;
                if g > best {
                    best = g;
                    p.copy_from_slice(&trial);
                    improved = true;
                }
            }
        }
        if !improved {
            step *= shrink;
        }
    }
    (p, evaluations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ALPHA;

    #[test]
    fn converges_near_known_maximizer() {
        let start = ArcProfile::new(vec![0.49, 0.01, 0.2, 0.0, 0.3]).unwrap();
        let r = refine(&start, 0.01, 0.5, 10_000).unwrap();
        assert!((r.best_gamma - ALPHA).abs() < 1e-7, "{}", r.best_gamma);
        assert!(r.best_gamma <= ALPHA + 1e-9);
    }

    #[test]
    fn leaves_equidistant() {
        let r = refine(&ArcProfile::equidistant(5), 0.05, 0.5, 50).unwrap();
        assert!(r.best_gamma > 1.0 + 1e-6);
    }

    #[test]
    fn zero_iterations_is_identity() {
        let start = ArcProfile::new(vec![0.1, 0.2, 0.3, 0.25, 0.15]).unwrap();
        let r = refine(&start, 0.01, 0.5, 0).unwrap();
        assert_eq!(r.best_profile, start);
        assert!(refine(&start, 0.01, 1.0, 5).is_err());
        assert!(refine(&start, 0.0, 0.5, 5).is_err());
    }
}
