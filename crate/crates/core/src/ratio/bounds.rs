use crate::circle::ArcProfile;
use crate::error::{Error, Result};

/// Maximum PCD social cost over all five-agent instances.
pub const SC_BOUND: f64 = 1.2;

/// Quadratic upper bound on the PCD social cost of a five-agent profile:
/// `1 - sum P_i^2 + 2 (P1 P3 + P4 P1 + P4 P2 + P5 P2 + P5 P3)`.
pub fn sc_bound_polynomial(p: &ArcProfile) -> Result<f64> {
    let [p1, p2, p3, p4, p5]: [f64; 5] = p
        .as_slice()
        .try_into()
        .map_err(|_| Error::InvalidProfile(format!("expected 5 entries, got {}", p.len())))?;
    let squares = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4 + p5 * p5;
    Ok(1.0 - squares + 2.0 * (p1 * p3 + p4 * p1 + p4 * p2 + p5 * p2 + p5 * p3))
}

/// Ratio bound `1.2 / (1.2 - 3 eps)` for profiles within `eps` of uniform.
pub fn equidistance_ball_bound(eps: f64) -> Result<f64> {
    if !(0.0..0.4).contains(&eps) {
        return Err(Error::InvalidParams(format!("eps must lie in [0, 0.4), got {eps}")));
    }
    Ok(SC_BOUND / (SC_BOUND - 3.0 * eps))
}
