//! Regional closed forms for five agents with agent 3 (index 2) median
//! optimal. With `(a, b, c, d, e) = P`, the arcs run `3->4 = a`, `4->5 = b`,
//! `5->1 = c`, `1->2 = d`, `2->3 = e`, and a region fixes which way the two
//! long distances `d(x1, x4)` and `d(x2, x5)` are measured:
//!
//! - A: `d14 = a + e + d`, B: `d14 = b + c`
//! - C: `d25 = e + a + b`, D: `d25 = c + d`

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circle::ArcProfile;
use crate::error::{Error, Result};
use crate::optimum::TIE_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionTag {
    AC,
    AD,
    BC,
    BD,
}

impl RegionTag {
    pub const ALL: [RegionTag; 4] = [RegionTag::AC, RegionTag::AD, RegionTag::BC, RegionTag::BD];

    pub fn name(self) -> &'static str {
        match self {
            RegionTag::AC => "AC",
            RegionTag::AD => "AD",
            RegionTag::BC => "BC",
            RegionTag::BD => "BD",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(name))
    }

    fn routes(self) -> (bool, bool) {
        // (d14 via a+e+d, d25 via e+a+b)
        match self {
            RegionTag::AC => (true, true),
            RegionTag::AD => (true, false),
            RegionTag::BC => (false, true),
            RegionTag::BD => (false, false),
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn five(p: &ArcProfile) -> Result<[f64; 5]> {
    p.as_slice()
        .try_into()
        .map_err(|_| Error::InvalidProfile(format!("expected 5 entries, got {}", p.len())))
}

/// Social costs at each agent with the long distances taken along the
/// region's routes.
pub fn region_costs(p: &ArcProfile, region: RegionTag) -> Result<[f64; 5]> {
    let [a, b, c, d, e] = five(p)?;
    let (via_a, via_c) = region.routes();
    let d14 = if via_a { a + e + d } else { b + c };
    let d25 = if via_c { e + a + b } else { c + d };
    Ok([
        c + 2.0 * d + e + d14,
        a + d + 2.0 * e + d25,
        2.0 * a + b + d + 2.0 * e,
        2.0 * a + b + e + d14,
        a + 2.0 * b + c + d25,
    ])
}

/// Closed-form ratio of the region, without checking membership.
pub fn region_formula(p: &ArcProfile, region: RegionTag) -> Result<f64> {
    let [a, b, c, d, e] = five(p)?;
    let den = b + 2.0 * a + 2.0 * e + d;
    let num = match region {
        RegionTag::AC => {
            a * (a + c + 3.0 * d + 2.0 * e)
                + b * (3.0 * e + d + 2.0 * a + b)
                + c * (b + 2.0 * a + 2.0 * e + d)
                + d * (b + 3.0 * a + 2.0 * e + d)
                + e * (3.0 * b + 2.0 * a + c + e)
        }
        RegionTag::AD => {
            a * (3.0 * d + 2.0 * e + c + a)
                + b * (2.0 * e + 2.0 * d + a + c)
                + c * (b + 2.0 * a + 2.0 * e + d)
                + d * (b + 3.0 * a + 2.0 * e + d)
                + e * (2.0 * b + a + 2.0 * c + d)
        }
        RegionTag::BD => {
            a * (b + 2.0 * c + 2.0 * d + e)
                + b * (a + c + 2.0 * d + 2.0 * e)
                + c * (b + 2.0 * a + 2.0 * e + d)
                + d * (2.0 * a + 2.0 * b + c + e)
                + e * (a + 2.0 * b + 2.0 * c + d)
        }
        RegionTag::BC => {
            let cost = region_costs(p, region)?;
            cost.iter().zip([a, b, c, d, e]).map(|(ci, pi)| ci * pi).sum()
        }
    };
    Ok(super::ratio(num, den))
}

/// The forms obtained by substituting `c = 1 - a - b - d - e`; absent for BC,
/// which is the mirror image of AD.
pub fn region_simplified_formula(p: &ArcProfile, region: RegionTag) -> Result<Option<f64>> {
    let [a, b, _, d, e] = five(p)?;
    let den = 2.0 * a + b + d + 2.0 * e;
    let num = match region {
        RegionTag::AC => {
            -2.0 * a * a - 2.0 * a * b + 2.0 * a * d - 2.0 * a * e + 2.0 * b * e - 2.0 * d * e
                - 2.0 * e * e
                + 3.0 * a
                + b
                + d
                + 3.0 * e
        }
        RegionTag::AD => {
            -2.0 * a * a - 4.0 * a * b + 2.0 * a * d - 4.0 * a * e - 2.0 * b * b - 2.0 * b * e
                - 2.0 * d * e
                - 4.0 * e * e
                + 3.0 * a
                + 2.0 * b
                + d
                + 4.0 * e
        }
        RegionTag::BD => {
            -4.0 * a * a - 4.0 * a * b - 2.0 * a * d - 6.0 * a * e - 2.0 * b * b - 2.0 * b * e
                - 2.0 * d * d
                - 4.0 * d * e
                - 4.0 * e * e
                + 4.0 * a
                + 2.0 * b
                + 2.0 * d
                + 4.0 * e
        }
        RegionTag::BC => return Ok(None),
    };
    Ok(Some(super::ratio(num, den)))
}

/// Every region whose conditions `p` satisfies, ties included.
pub fn regions_of(p: &ArcProfile) -> Result<Vec<RegionTag>> {
    let [a, b, c, d, e] = five(p)?;
    let tol = TIE_TOLERANCE;
    let half = 0.5 + tol;
    // short distances must be the direct ones
    if a + b > half || d + e > half || c > half || a + e > half {
        return Ok(Vec::new());
    }
    let route_a = a + e + d <= half;
    let route_b = b + c <= half;
    let route_c = e + a + b <= half;
    let route_d = c + d <= half;
    let d14 = (a + e + d).min(b + c);
    let d25 = (e + a + b).min(c + d);
    let true_costs = [
        c + 2.0 * d + e + d14,
        a + d + 2.0 * e + d25,
        2.0 * a + b + d + 2.0 * e,
        2.0 * a + b + e + d14,
        a + 2.0 * b + c + d25,
    ];
    let min = true_costs.iter().copied().fold(f64::INFINITY, f64::min);
    if true_costs[2] > min + tol {
        return Ok(Vec::new());
    }
    Ok(RegionTag::ALL
        .into_iter()
        .filter(|r| {
            let (via_a, via_c) = r.routes();
            (if via_a { route_a } else { route_b }) && (if via_c { route_c } else { route_d })
        })
        .collect())
}

/// Regional ratio after checking that `p` belongs to the region.
pub fn region_gamma(p: &ArcProfile, region: RegionTag) -> Result<f64> {
    if !regions_of(p)?.contains(&region) {
        return Err(Error::RegionViolation(region));
    }
    region_formula(p, region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Instance;
    use crate::ratio::pcd_gamma;

    fn prof(v: [f64; 5]) -> ArcProfile {
        ArcProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stationary_value() {
        let r = 15f64.sqrt();
        let (x, y) = ((r - 3.0) / 6.0, 1.0 - r / 6.0);
        let p = prof([x, y, 0.0, y, x]);
        let g = region_formula(&p, RegionTag::AC).unwrap();
        assert!((g - (5.0 - r)).abs() < 1e-12);
    }

    #[test]
    fn equidistant_profile() {
        let p = ArcProfile::equidistant(5);
        assert_eq!(regions_of(&p).unwrap(), vec![RegionTag::BD]);
        assert!((region_gamma(&p, RegionTag::BD).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(region_gamma(&p, RegionTag::AC), Err(Error::RegionViolation(_))));
    }

    #[test]
    fn membership_and_direct_agreement() {
        let p = prof([0.1, 0.15, 0.3, 0.25, 0.2]);
        let regions = regions_of(&p).unwrap();
        assert!(!regions.is_empty());
        let direct = pcd_gamma(&Instance::from_profile(&p).unwrap());
        for r in regions {
            assert!((region_gamma(&p, r).unwrap() - direct).abs() < 1e-12);
        }
        let large = prof([0.05, 0.05, 0.6, 0.2, 0.1]);
        assert!(matches!(region_gamma(&large, RegionTag::BD), Err(Error::RegionViolation(RegionTag::BD))));
    }

    #[test]
    fn simplified_forms_match() {
        for p in [[0.1, 0.15, 0.3, 0.25, 0.2], [0.2; 5], [0.05, 0.3, 0.2, 0.1, 0.35]] {
            let p = prof(p);
            for r in [RegionTag::AC, RegionTag::AD, RegionTag::BD] {
                let full = region_formula(&p, r).unwrap();
                let simple = region_simplified_formula(&p, r).unwrap().unwrap();
                assert!((full - simple).abs() < 1e-12, "{r}");
            }
        }
    }

    #[test]
    fn costs_match_printed_numerators() {
        let p = prof([0.13, 0.21, 0.17, 0.3, 0.19]);
        for r in RegionTag::ALL {
            let c = region_costs(&p, r).unwrap();
            let sc: f64 = c.iter().zip(p.as_slice()).map(|(a, b)| a * b).sum();
            assert!((sc / c[2] - region_formula(&p, r).unwrap()).abs() < 1e-12, "{r}");
        }
    }
}
