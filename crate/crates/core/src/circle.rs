//! Geometry of the unit circle.
//!
//! Positions are fractions of the circumference in `[0, 1)`. An [`Instance`]
//! lists its agents in clockwise cyclic order starting from agent 0; the
//! consecutive arcs and the facing-arc profile are derived from that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when validating that a profile sums to one.
pub const PROFILE_TOLERANCE: f64 = 1e-9;

/// A point on the unit circle, stored as a fraction of the circumference.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoint(f64);

#[inline]
fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid rounds tiny negative inputs up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl CirclePoint {
    pub const ZERO: CirclePoint = CirclePoint(0.0);

    /// Strict constructor: the value must already lie in `[0, 1)`.
    pub fn new(pos: f64) -> Result<Self> {
        if pos.is_finite() && (0.0..1.0).contains(&pos) {
            Ok(Self(pos))
        } else {
            Err(Error::PositionOutOfRange(pos))
        }
    }

    /// Reduces any finite value modulo one.
    pub fn wrapping(pos: f64) -> Result<Self> {
        if pos.is_finite() {
            Ok(Self(wrap(pos)))
        } else {
            Err(Error::PositionOutOfRange(pos))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Moves the point clockwise by `delta` (counterclockwise when negative).
    #[inline]
    pub fn offset(self, delta: f64) -> Self {
        Self(wrap(self.0 + delta))
    }

    #[inline]
    pub fn antipode(self) -> Self {
        self.offset(0.5)
    }

    /// Clockwise arc length from `self` to `other`, in `[0, 1)`.
    #[inline]
    pub fn clockwise_to(self, other: CirclePoint) -> f64 {
        wrap(other.0 - self.0)
    }
}

impl From<CirclePoint> for f64 {
    fn from(p: CirclePoint) -> f64 {
        p.0
    }
}

/// Shortest-arc distance, in `[0, 0.5]`.
#[inline]
pub fn circle_distance(x: CirclePoint, y: CirclePoint) -> f64 {
    let d = (x.0 - y.0).abs();
    d.min(1.0 - d)
}

pub(crate) fn check_agent_count(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::EmptyInstance),
        n if n % 2 == 0 => Err(Error::EvenAgentCount(n)),
        1 => Err(Error::TooFewAgents(1)),
        _ => Ok(()),
    }
}

/// Arc-length vector `P`: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcProfile(Vec<f64>);

impl ArcProfile {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProfile("profile is empty".into()));
        }
        if let Some(bad) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidProfile(format!("entry {bad} is negative or not finite")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > PROFILE_TOLERANCE {
            return Err(Error::InvalidProfile(format!("entries sum to {sum}, expected 1")));
        }
        Ok(Self(p))
    }

    pub fn equidistant(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Profile of the same instance with every label shifted so that agent
    /// `start` becomes agent 0.
    pub fn relabeled(&self, start: usize) -> Self {
        let n = self.0.len();
        Self((0..n).map(|i| self.0[(start + i) % n]).collect())
    }

    /// Reversed entry order; the profile of the mirrored instance up to relabeling.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn max_entry(&self) -> (usize, f64) {
        self.0
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
    }
}

impl std::ops::Index<usize> for ArcProfile {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// An odd number (at least three) of agents in clockwise cyclic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    positions: Vec<CirclePoint>,
}

impl Instance {
    /// Stable sort by position; coincident agents keep their input order.
    pub fn canonicalize(positions: &[CirclePoint]) -> Result<Self> {
        check_agent_count(positions.len())?;
        let mut sorted = positions.to_vec();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { positions: sorted })
    }

    /// Validates every value against `[0, 1)` and canonicalizes.
    pub fn from_positions(values: &[f64]) -> Result<Self> {
        let pts = values.iter().map(|&v| CirclePoint::new(v)).collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&pts)
    }

    /// Accepts positions already listed in clockwise cyclic order, which need
    /// not start at the smallest value.
    pub fn from_cyclic(positions: Vec<CirclePoint>) -> Result<Self> {
        check_agent_count(positions.len())?;
        let tour: f64 = positions.windows(2).map(|w| w[0].clockwise_to(w[1])).sum();
        if tour > 1.0 + PROFILE_TOLERANCE {
            return Err(Error::InvalidParams(format!(
                "positions are not in clockwise order (tour length {tour})"
            )));
        }
        Ok(Self { positions })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    #[inline]
    pub fn positions(&self) -> &[CirclePoint] {
        &self.positions
    }

    #[inline]
    pub fn position(&self, i: usize) -> CirclePoint {
        self.positions[i]
    }

    pub fn values(&self) -> Vec<f64> {
        self.positions.iter().map(|p| p.0).collect()
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.len() })
        }
    }

    /// `arcs[j]` is the clockwise gap from agent `j` to agent `j + 1` (mod n).
    pub fn consecutive_arcs(&self) -> Vec<f64> {
        let n = self.len();
        let mut arcs = Vec::with_capacity(n);
        let mut tour = 0.0;
        for w in self.positions.windows(2) {
            let gap = w[0].clockwise_to(w[1]);
            tour += gap;
            arcs.push(gap);
        }
        arcs.push((1.0 - tour).max(0.0));
        arcs
    }

    /// Facing-arc profile: agent `i` faces the arc from agent `i + (n-1)/2`
    /// to agent `i + (n+1)/2`.
    pub fn facing_profile(&self) -> ArcProfile {
        let arcs = self.consecutive_arcs();
        let n = arcs.len();
        let half = (n - 1) / 2;
        ArcProfile((0..n).map(|i| arcs[(i + half) % n]).collect())
    }

    /// Rebuilds an instance from its facing profile with agent 0 at position 0.
    pub fn from_profile(p: &ArcProfile) -> Result<Self> {
        check_agent_count(p.len())?;
        let mut positions = Vec::with_capacity(p.len());
        fill_positions_from_profile(p.as_slice(), &mut positions);
        Ok(Self { positions })
    }

    /// Two coincident pairs and a lone agent: positions `(0, 0, s, s+t, s+t)`.
    pub fn two_pair(s: f64, t: f64) -> Result<Self> {
        if !(s.is_finite() && t.is_finite()) || s < 0.0 || t < 0.0 || s + t > 1.0 {
            return Err(Error::InvalidParams(format!(
                "two-pair parameters need s, t >= 0 and s + t <= 1, got s = {s}, t = {t}"
            )));
        }
        let pair = CirclePoint(wrap(s + t));
        Ok(Self {
            positions: vec![CirclePoint::ZERO, CirclePoint::ZERO, CirclePoint(wrap(s)), pair, pair],
        })
    }

    /// `k` agents at 0, `k` agents at `t`, and one agent antipodal to `t`.
    pub fn clustering(k: usize, t: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("cluster size must be positive".into()));
        }
        if !(0.0..=0.5).contains(&t) {
            return Err(Error::InvalidParams(format!("cluster distance must lie in [0, 0.5], got {t}")));
        }
        let mut positions = vec![CirclePoint::ZERO; k];
        positions.extend(std::iter::repeat_n(CirclePoint(t), k));
        positions.push(CirclePoint(wrap(t + 0.5)));
        Ok(Self { positions })
    }

    /// Rotates every agent clockwise by `theta`; labels are unchanged.
    pub fn rotated(&self, theta: f64) -> Self {
        Self {
            positions: self.positions.iter().map(|p| p.offset(theta)).collect(),
        }
    }

    /// Mirror image `x -> -x`; label order is reversed to stay clockwise.
    pub fn reflected(&self) -> Self {
        Self {
            positions: self.positions.iter().rev().map(|p| CirclePoint(wrap(-p.0))).collect(),
        }
    }

    /// Cyclic relabeling so that agent `start` becomes agent 0.
    pub fn relabeled(&self, start: usize) -> Self {
        let n = self.len();
        Self {
            positions: (0..n).map(|i| self.positions[(start + i) % n]).collect(),
        }
    }

    /// Replaces agent `i` with `pos` and re-canonicalizes.
    pub fn with_position(&self, i: usize, pos: CirclePoint) -> Result<Self> {
        self.check_index(i)?;
        let mut pts = self.positions.clone();
        pts[i] = pos;
        Self::canonicalize(&pts)
    }

    pub(crate) fn from_cyclic_unchecked(positions: Vec<CirclePoint>) -> Self {
        Self { positions }
    }
}

/// Positions with agent 0 at the origin for a facing profile `p`.
pub(crate) fn fill_positions_from_profile(p: &[f64], out: &mut Vec<CirclePoint>) {
    let n = p.len();
    let half = (n - 1) / 2;
    out.clear();
    let mut x = 0.0;
    out.push(CirclePoint::ZERO);
    for j in 0..n - 1 {
        x += p[(j + n - half) % n];
        out.push(CirclePoint(if x >= 1.0 { wrap(x - 1.0) } else { x }));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<CirclePoint> {
        v.iter().map(|&x| CirclePoint::new(x).unwrap()).collect()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn distance_examples() {
        let d = |a, b| circle_distance(CirclePoint::new(a).unwrap(), CirclePoint::new(b).unwrap());
        assert!((d(0.1, 0.9) - 0.2).abs() < 1e-15);
        assert_eq!(d(0.3, 0.3), 0.0);
        assert_eq!(d(0.0, 0.5), 0.5);
    }

    #[test]
    fn point_range_is_enforced() {
        assert!(CirclePoint::new(1.0).is_err());
        assert!(CirclePoint::new(-0.1).is_err());
        assert!(CirclePoint::new(f64::NAN).is_err());
        assert_eq!(CirclePoint::wrapping(1.25).unwrap().value(), 0.25);
        assert_eq!(CirclePoint::wrapping(-0.25).unwrap().value(), 0.75);
        assert_eq!(CirclePoint::wrapping(-1e-20).unwrap().value(), 0.0);
    }

    #[test]
    fn canonicalize_sorts_stably() {
        let inst = Instance::canonicalize(&pts(&[0.5, 0.1, 0.9])).unwrap();
        assert_eq!(inst.values(), vec![0.1, 0.5, 0.9]);
        let inst = Instance::canonicalize(&pts(&[0.7, 0.2, 0.2])).unwrap();
        assert_eq!(inst.values(), vec![0.2, 0.2, 0.7]);
        assert_eq!(Instance::from_positions(&[0.1, 0.2, 0.3, 0.4]), Err(Error::EvenAgentCount(4)));
        assert_eq!(Instance::from_positions(&[]), Err(Error::EmptyInstance));
        assert_eq!(Instance::from_positions(&[0.3]), Err(Error::TooFewAgents(1)));
    }

    #[test]
    fn arcs_examples() {
        let eq = Instance::from_positions(&[0.0, 0.2, 0.4, 0.6, 0.8]).unwrap();
        assert!(close(&eq.consecutive_arcs(), &[0.2; 5], 1e-15));
        let same = Instance::from_positions(&[0.3; 5]).unwrap();
        assert_eq!(same.consecutive_arcs(), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        let tp = Instance::from_positions(&[0.0, 0.0, 0.2, 0.5, 0.5]).unwrap();
        assert!(close(&tp.consecutive_arcs(), &[0.0, 0.2, 0.3, 0.0, 0.5], 1e-15));
    }

    #[test]
    fn facing_examples() {
        let tp = Instance::two_pair(0.2, 0.3).unwrap();
        assert!(close(tp.facing_profile().as_slice(), &[0.3, 0.0, 0.5, 0.0, 0.2], 1e-15));
        let eq = Instance::from_positions(&[0.0, 0.2, 0.4, 0.6, 0.8]).unwrap();
        assert!(close(eq.facing_profile().as_slice(), &[0.2; 5], 1e-15));
        let s = (2.0 - 2f64.sqrt()) / 2.0;
        let worst = Instance::from_positions(&[0.0, 0.0, s, s + 0.5, s + 0.5]).unwrap();
        let expect = [0.5, 0.0, (2f64.sqrt() - 1.0) / 2.0, 0.0, s];
        assert!(close(worst.facing_profile().as_slice(), &expect, 1e-15));
    }

    #[test]
    fn profile_round_trip_examples() {
        let inst = Instance::from_profile(&ArcProfile::equidistant(5)).unwrap();
        assert!(close(&inst.values(), &[0.0, 0.2, 0.4, 0.6, 0.8], 1e-15));
        let s = (2.0 - 2f64.sqrt()) / 2.0;
        let p = ArcProfile::new(vec![0.5, 0.0, (2f64.sqrt() - 1.0) / 2.0, 0.0, s]).unwrap();
        let inst = Instance::from_profile(&p).unwrap();
        assert!(close(&inst.values(), &[0.0, 0.0, s, s + 0.5, s + 0.5], 1e-15));
        assert!(close(inst.facing_profile().as_slice(), p.as_slice(), 1e-15));
        assert!(matches!(ArcProfile::new(vec![0.3; 5]), Err(Error::InvalidProfile(_))));
        assert!(matches!(ArcProfile::new(vec![-0.1, 0.3, 0.3, 0.3, 0.2]), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn degenerate_profile_keeps_labels() {
        // a unit entry puts every agent at the origin, where the full arc is
        // attributed to the last gap
        let p = ArcProfile::new(vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let inst = Instance::from_profile(&p).unwrap();
        assert_eq!(inst.values(), vec![0.0; 5]);
        let p = ArcProfile::new(vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(Instance::from_profile(&p).unwrap().facing_profile(), p);
        let p = ArcProfile::new(vec![0.25, 0.25, 0.0, 0.25, 0.25]).unwrap();
        let inst = Instance::from_profile(&p).unwrap();
        assert!(close(inst.facing_profile().as_slice(), p.as_slice(), 1e-15));
    }

    #[test]
    fn two_pair_and_clustering_constructors() {
        let z = Instance::two_pair(0.0, 0.0).unwrap();
        assert_eq!(z.values(), vec![0.0; 5]);
        assert!(Instance::two_pair(0.6, 0.5).is_err());
        assert!(Instance::two_pair(-0.1, 0.5).is_err());
        let c = Instance::clustering(3, 0.0).unwrap();
        assert_eq!(c.values(), vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
        assert!(Instance::clustering(2, 0.6).is_err());
        assert!(Instance::clustering(0, 0.2).is_err());
        let c = Instance::clustering(1, 0.25).unwrap();
        assert_eq!(c.values(), vec![0.0, 0.25, 0.75]);
    }

    #[test]
    fn cyclic_order_is_validated() {
        assert!(Instance::from_cyclic(pts(&[0.8, 0.9, 0.1])).is_ok());
        assert!(Instance::from_cyclic(pts(&[0.1, 0.8, 0.5])).is_err());
    }

    #[test]
    fn rotation_and_reflection_keep_profile_shape() {
        let inst = Instance::from_positions(&[0.05, 0.1, 0.42, 0.7, 0.93]).unwrap();
        let p = inst.facing_profile();
        assert!(close(inst.rotated(0.37).facing_profile().as_slice(), p.as_slice(), 1e-12));
        let mut r = inst.reflected().facing_profile().into_vec();
        r.sort_by(f64::total_cmp);
        let mut q = p.into_vec();
        q.sort_by(f64::total_cmp);
        assert!(close(&r, &q, 1e-12));
    }
}
