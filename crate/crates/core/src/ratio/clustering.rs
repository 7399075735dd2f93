//! The clustering family: `k` agents at 0, `k` at `t`, one lone agent at
//! `t + 1/2`, and the hypothesized worst ratio it induces.

use serde::Serialize;

use crate::error::{Error, Result};

/// `(2kt - 2kt^2 - t + 1/2) / (kt - t + 1/2)` for `0 < t < 1/2`.
pub fn clustering_gamma(k: usize, t: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParams("cluster size must be positive".into()));
    }
    if !(t > 0.0 && t < 0.5) {
        return Err(Error::InvalidParams(format!("cluster distance must lie in (0, 0.5), got {t}")));
    }
    Ok(formula(k as f64, t))
}

fn formula(k: f64, t: f64) -> f64 {
    (2.0 * k * t - 2.0 * k * t * t - t + 0.5) / (k * t - t + 0.5)
}

fn check_k(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("closed form needs k >= 2, got {k}")));
    }
    Ok(k as f64)
}

/// Maximizer of [`clustering_gamma`] in `t`, `(sqrt(k) - 1) / (2 (k - 1))`.
pub fn t_max(k: usize) -> Result<f64> {
    let k = check_k(k)?;
    Ok((k.sqrt() - 1.0) / (2.0 * (k - 1.0)))
}

/// `(2k^2 - 2k^{3/2} - k + 1) / (k - 1)^2`, the family maximum for cluster size `k`.
pub fn gamma_hypothesis_k(k: usize) -> Result<f64> {
    let k = check_k(k)?;
    Ok((2.0 * k * k - 2.0 * k.powf(1.5) - k + 1.0) / ((k - 1.0) * (k - 1.0)))
}

/// `2 [(n^2 - 3n + 4) - sqrt(2) (n-1)^{3/2}] / (n - 3)^2` for odd `n >= 5`.
pub fn gamma_hypothesis(n: usize) -> Result<f64> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("hypothesis needs odd n >= 5, got {n}")));
    }
    let n = n as f64;
    let num = (n * n - 3.0 * n + 4.0) - std::f64::consts::SQRT_2 * (n - 1.0).powf(1.5);
    Ok(2.0 * num / ((n - 3.0) * (n - 3.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusteringMax {
    pub t: f64,
    pub gamma: f64,
}

/// Numerical maximum over `t`: a coarse scan followed by golden-section search.
pub fn clustering_max(k: usize) -> Result<ClusteringMax> {
    if k == 0 {
        return Err(Error::InvalidParams("cluster size must be positive".into()));
    }
    let kf = k as f64;
    let f = |t: f64| formula(kf, t);
    let cells = 1000;
    let h = 0.5 / cells as f64;
    let best = (1..cells).max_by(|&i, &j| f(i as f64 * h).total_cmp(&f(j as f64 * h))).unwrap();
    let (mut lo, mut hi) = ((best - 1) as f64 * h, (best + 1) as f64 * h);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(ClusteringMax { t, gamma: f(t) })
}
