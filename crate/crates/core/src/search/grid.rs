use rayon::prelude::*;

use super::{check_budget, check_odd_n, Candidate, SearchMethod, SearchResult, TopK, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ratio::PcdEvaluator;

/// Number of points `C(m + n - 1, n - 1)` on the simplex lattice with `m`
/// steps per unit, saturating at `u64::MAX`.
pub fn lattice_size(n: usize, m: usize) -> u64 {
    let (n, m) = (n as u128, m as u128);
    let mut c: u128 = 1;
    for i in 1..n {
        c = c * (m + i) / i;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

fn steps_for(n: usize, resolution: f64) -> Result<usize> {
    check_odd_n(n)?;
    if !matches!(n, 3 | 5 | 7 | 9) {
        return Err(Error::InvalidParams(format!("grid search supports n in {{3, 5, 7, 9}}, got {n}")));
    }
    if !(1e-3..=0.2).contains(&resolution) {
        return Err(Error::InvalidParams(format!(
            "grid resolution must lie in [0.001, 0.2], got {resolution}"
        )));
    }
    Ok((1.0 / resolution).round() as usize)
}

// lattice vectors whose tail `buf[2..]` sums to `remaining`, in lexicographic order
fn each_tail(buf: &mut [u32], pos: usize, remaining: u32, f: &mut impl FnMut(&[u32])) {
    if pos == buf.len() - 1 {
        buf[pos] = remaining;
        f(buf);
        return;
    }
    for v in 0..=remaining {
        buf[pos] = v;
        each_tail(buf, pos + 1, remaining - v, f);
    }
}

fn not_below_reversal(v: &[u32]) -> bool {
    v.iter().rev().cmp(v.iter()).is_le()
}

/// A profile with its ratio.
pub type Scored = (f64, Vec<f64>);

/// Exhaustive search of the reflection-reduced lattice, keeping the best
/// `top` profiles. Also returns the number of evaluations.
pub fn grid_search_top(
    n: usize,
    resolution: f64,
    cap: u64,
    top: usize,
) -> Result<(Vec<Scored>, u64)> {
    let m = steps_for(n, resolution)?;
    check_budget(lattice_size(n, m), cap)?;
    let heads: Vec<(u32, u32)> =
        (0..=m as u32).flat_map(|a| (0..=m as u32 - a).map(move |b| (a, b))).collect();
    let scale = m as f64;
    let (best, evaluations) = heads
        .par_iter()
        .map(|&(a, b)| {
            let mut ev = PcdEvaluator::new();
            let mut best = TopK::new(top);
            let mut count = 0u64;
            let mut buf = vec![0u32; n];
            buf[0] = a;
            buf[1] = b;
            let mut p = vec![0.0; n];
            each_tail(&mut buf, 2, m as u32 - a - b, &mut |v| {
                if !not_below_reversal(v) {
                    return;
                }
                for (pi, &vi) in p.iter_mut().zip(v) {
                    *pi = vi as f64 / scale;
                }
                count += 1;
                let g = ev.gamma_of_profile(&p);
                if best.admits(g) {
                    best.push(Candidate { gamma: g, profile: p.clone() });
                }
            });
            (best, count)
        })
        .reduce(|| (TopK::new(top), 0), |(x, cx), (y, cy)| (x.merge(y), cx + cy));
    let list = best.into_vec().into_iter().map(|c| (c.gamma, c.profile)).collect();
    Ok((list, evaluations))
}

/// Best profile on the simplex lattice of spacing `resolution`.
pub fn grid_search(n: usize, resolution: f64) -> Result<SearchResult> {
    let (top, evaluations) = grid_search_top(n, resolution, DEFAULT_BUDGET, 1)?;
    let (_, profile) = top.into_iter().next().expect("lattice is nonempty");
    SearchResult::emit(profile, evaluations, SearchMethod::Grid)
}
