//! Brute-force reference evaluation written from the definitions, sharing no
//! code with the library. Positions may come in any order.
#![allow(dead_code)]

pub fn dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Sorted copy of the positions reduced to [0, 1).
pub fn sorted(pos: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = pos.iter().map(|x| x.rem_euclid(1.0)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// PCD probabilities in sorted order: the arc between the two agents
/// `(n-1)/2` and `(n+1)/2` steps ahead of each agent.
pub fn pcd_probabilities(sorted_pos: &[f64]) -> Vec<f64> {
    let n = sorted_pos.len();
    let gap = |j: usize| {
        let a = sorted_pos[j % n];
        let b = sorted_pos[(j + 1) % n];
        if j % n == n - 1 { b + 1.0 - a } else { b - a }
    };
    (0..n).map(|i| gap(i + (n - 1) / 2)).collect()
}

pub fn total_distance(y: f64, pos: &[f64]) -> f64 {
    pos.iter().map(|&x| dist(y, x)).sum()
}

pub fn social_cost(pos: &[f64]) -> f64 {
    let s = sorted(pos);
    let p = pcd_probabilities(&s);
    s.iter().zip(&p).map(|(&x, &q)| q * total_distance(x, &s)).sum()
}

/// Minimum of the total distance over the whole circle. The objective is
/// piecewise linear with breaks at agents and their antipodes.
pub fn optimum(pos: &[f64]) -> f64 {
    pos.iter()
        .flat_map(|&x| [x, x + 0.5])
        .map(|y| total_distance(y, pos))
        .fold(f64::INFINITY, f64::min)
}

pub fn gamma(pos: &[f64]) -> f64 {
    let opt = optimum(pos);
    if opt == 0.0 { 1.0 } else { social_cost(pos) / opt }
}

/// Expected distance from `truth` to the PCD outcome on `reported`.
pub fn expected_cost(truth: f64, reported: &[f64]) -> f64 {
    let s = sorted(reported);
    let p = pcd_probabilities(&s);
    s.iter().zip(&p).map(|(&x, &q)| q * dist(truth, x)).sum()
}

/// Positions whose consecutive clockwise arcs are `arcs`, starting at 0.
pub fn positions_from_arcs(arcs: &[f64]) -> Vec<f64> {
    let mut x = 0.0;
    arcs.iter()
        .map(|a| {
            let here = x;
            x += a;
            here
        })
        .collect()
}

#[test]
fn oracle_sanity() {
    let eq = [0.0, 0.2, 0.4, 0.6, 0.8];
    assert!((social_cost(&eq) - 1.2).abs() < 1e-12);
    assert!((gamma(&eq) - 1.0).abs() < 1e-12);
    assert!((optimum(&[0.0, 0.1, 0.3]) - 0.3).abs() < 1e-12);
}
