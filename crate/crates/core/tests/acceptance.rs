//! Acceptance criteria, one line each. Runs without the libtest harness so
//! that every criterion reports even when an earlier one fails.

mod common;

use std::time::Instant;

use cml::ratio::{
    clustering_max, gamma_hypothesis, gamma_hypothesis_k, is_reduced, large_arc_reduce,
    region_formula, region_gamma, regions_of, sc_bound_polynomial, two_pair_case_max,
    two_pair_sweep, RegionTag, TwoPairCase,
};
use cml::search::{dirichlet_profile, hybrid_search, random_search, HybridConfig};
use cml::{
    optimum::{grid_oracle_optimum, large_arc_rule}, run_suite, ArcProfile, CirclePoint, Instance, Suite, SuiteOptions,
    ALPHA,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn near(what: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || format!("{what} = {got:.15}, expected {want:.15} within {tol:e}"))
}

fn from_arcs(p: &[f64]) -> Instance {
    Instance::from_profile(&ArcProfile::new(p.to_vec()).unwrap()).unwrap()
}

#[allow(clippy::approx_constant)]
fn worst_instance() -> Outcome {
    let s = (2.0 - 2f64.sqrt()) / 2.0;
    let pos = [0.0, 0.0, s, s + 0.5, s + 0.5];
    let inst = Instance::from_positions(&pos).unwrap();
    let g = cml::pcd_gamma(&inst);
    let report = cml::gamma(&inst, &cml::Mechanism::Pcd);
    near("gamma", g, ALPHA, 1e-9)?;
    near("SC", report.sc, common::social_cost(&pos), 1e-7)?;
    near("OPT", report.opt.cost, common::optimum(&pos), 1e-7)?;
    near("SC", report.sc, 0.9497475, 1e-7)?;
    near("OPT", report.opt.cost, 0.7071068, 1e-7)?;
    Ok(format!("gamma = {g:.12}, SC = {:.9}, OPT = {:.9}", report.sc, report.opt.cost))
}

fn tightness_sweep() -> Outcome {
    let s0 = (2.0 - 2f64.sqrt()) / 2.0;
    let best = two_pair_sweep(1e-3).map_err(|e| e.to_string())?;
    near("sweep max", best.gamma, ALPHA, 1e-6)?;
    near("s at max", best.s, s0, 1e-5)?;
    near("t at max", best.t, 0.5, 1e-5)?;
    let oracle = common::gamma(&[0.0, 0.0, best.s, best.s + best.t, best.s + best.t]);
    near("oracle at max", oracle, best.gamma, 1e-9)?;
    let a1 = two_pair_case_max(TwoPairCase::A1, 1e-3).map_err(|e| e.to_string())?;
    near("A1 max", a1.gamma, 9.0 / 8.0, 1e-9)?;
    let mut a2 = 0.0f64;
    for case in [TwoPairCase::A2Opt1, TwoPairCase::A2Opt3] {
        let m = two_pair_case_max(case, 1e-3).map_err(|e| e.to_string())?;
        ensure(m.gamma <= 9.0 / 8.0 + 1e-6, || format!("{} max {} above 9/8", case.name(), m.gamma))?;
        a2 = a2.max(m.gamma);
    }
    Ok(format!(
        "max {:.9} ({}) at s = {:.6}, t = {:.6}; A1 {:.12}; A2 {:.9}",
        best.gamma,
        best.case.name(),
        best.s,
        best.t,
        a1.gamma,
        a2
    ))
}

fn upper_bound_search() -> Outcome {
    let cfg = HybridConfig { n: 5, grid: Some(0.005), samples: 1_000_000, seed: 1, top: 100, ..Default::default() };
    let r = hybrid_search(&cfg).map_err(|e| e.to_string())?;
    ensure(r.best_gamma >= ALPHA - 1e-6 && r.best_gamma <= ALPHA + 1e-9, || {
        format!("best {:.15} outside [alpha - 1e-6, alpha + 1e-9]", r.best_gamma)
    })?;
    let oracle = common::gamma(&from_arcs(r.best_profile.as_slice()).values());
    ensure(oracle <= ALPHA + 1e-9, || format!("oracle ratio {oracle:.15} above alpha"))?;
    Ok(format!("best {:.12} after {} evaluations", r.best_gamma, r.evaluations))
}

fn sc_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut p = [0.0; 5];
    let (mut worst_gap, mut worst_f) = (f64::NEG_INFINITY, 0.0f64);
    for _ in 0..1_000_000 {
        dirichlet_profile(&mut rng, &mut p);
        let inst = from_arcs(&p);
        let f = sc_bound_polynomial(&inst.facing_profile()).unwrap();
        let sc = common::social_cost(&inst.values());
        ensure(sc <= f + 1e-12, || format!("SC {sc} above bound {f} at {p:?}"))?;
        ensure(f <= 1.2 + 1e-12, || format!("bound {f} above 1.2 at {p:?}"))?;
        worst_gap = worst_gap.max(sc - f);
        worst_f = worst_f.max(f);
    }
    let eq = ArcProfile::equidistant(5);
    near("bound at equidistant", sc_bound_polynomial(&eq).unwrap(), 1.2, 1e-12)?;
    near("SC at equidistant", common::social_cost(&[0.0, 0.2, 0.4, 0.6, 0.8]), 1.2, 1e-12)?;
    Ok(format!("1e6 samples, max SC - bound {worst_gap:e}, max bound {worst_f:.12}"))
}

fn random_positions(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let snap = rng.random_bool(0.5);
    (0..n)
        .map(|_| {
            let x: f64 = rng.random();
            if snap { (x * 20.0).floor() / 20.0 } else { x }
        })
        .collect()
}

fn strategyproofness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = f64::NEG_INFINITY;
    for n in [3, 5, 7] {
        for _ in 0..10_000 {
            let pos = random_positions(&mut rng, n);
            let i = rng.random_range(0..n);
            let lie: f64 = rng.random();
            let truthful = common::expected_cost(pos[i], &pos);
            let mut reported = pos.clone();
            reported[i] = lie;
            let deviation = common::expected_cost(pos[i], &reported);
            ensure(truthful <= deviation + 1e-9, || {
                format!("agent {i} of {pos:?} gains by reporting {lie}: {truthful} > {deviation}")
            })?;
            worst = worst.max(truthful - deviation);
        }
    }
    let r = run_suite(Suite::Strategyproof, &SuiteOptions::new(30_000, 7));
    ensure(r.passed(), || r.summary())?;
    Ok(format!("3 x 1e4 triples, max gain {worst:e}"))
}

fn optimum_at_agent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let pos = random_positions(&mut rng, 5);
        let pts: Vec<CirclePoint> = pos.iter().map(|&x| CirclePoint::wrapping(x).unwrap()).collect();
        let inst = Instance::canonicalize(&pts).unwrap();
        let grid = grid_oracle_optimum(&inst, 1e-4).map_err(|e| e.to_string())?;
        let at_agent = cml::cost_vector(&inst).min();
        near("best agent cost", at_agent, common::optimum(&pos), 1e-12)?;
        let gain = at_agent - grid.cost;
        ensure(gain <= 5.0 * 1e-4, || format!("grid beats agents by {gain} at {pos:?}"))?;
        worst = worst.max(gain);
    }
    Ok(format!("1e4 instances, max grid improvement {worst:e}"))
}

fn large_arc_and_opt_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut p = [0.0; 5];
    let mut done = 0;
    while done < 100_000 {
        dirichlet_profile(&mut rng, &mut p);
        let inst = from_arcs(&p);
        if let Some(i) = large_arc_rule(&inst) {
            let pos = inst.values();
            let cost = common::total_distance(pos[i], &pos);
            near("large-arc agent cost", cost, common::optimum(&pos), 1e-12)?;
            done += 1;
        }
    }
    let r = run_suite(Suite::LargeArc, &SuiteOptions::new(100_000, 9));
    ensure(r.passed(), || r.summary())?;
    Ok(format!("1e5 large-arc samples against the oracle; suite: {} checks, 0 violations", r.checked))
}

fn regional_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut p = [0.0; 5];
    let mut counts = [0u64; 4];
    let mut worst = 0.0f64;
    const QUOTA: u64 = 100_000;
    while counts.iter().any(|&c| c < QUOTA) {
        dirichlet_profile(&mut rng, &mut p);
        for shift in 0..5 {
            let q = ArcProfile::new((0..5).map(|i| p[(i + shift) % 5]).collect()).unwrap();
            for region in regions_of(&q).unwrap() {
                let slot = RegionTag::ALL.iter().position(|&t| t == region).unwrap();
                if counts[slot] >= QUOTA {
                    continue;
                }
                counts[slot] += 1;
                let direct = common::gamma(&Instance::from_profile(&q).unwrap().values());
                let g = region_gamma(&q, region).map_err(|e| e.to_string())?;
                ensure((g - direct).abs() <= 1e-9, || format!("{region} formula {g} vs {direct} at {q:?}"))?;
                worst = worst.max((g - direct).abs());
            }
        }
    }
    let r = 15f64.sqrt();
    let (x, y) = ((r - 3.0) / 6.0, 1.0 - r / 6.0);
    let ac = region_formula(&ArcProfile::new(vec![x, y, 0.0, y, x]).unwrap(), RegionTag::AC).unwrap();
    near("AC stationary value", ac, 5.0 - r, 1e-12)?;
    Ok(format!("1e5 samples per region, max difference {worst:e}; AC stationary {ac:.15}"))
}

fn reduction_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut p = [0.0; 5];
    let (mut done, mut legs) = (0, 0);
    while done < 1_000 {
        dirichlet_profile(&mut rng, &mut p);
        if p.iter().all(|&x| x < 0.5) {
            continue;
        }
        done += 1;
        let inst = from_arcs(&p);
        let red = large_arc_reduce(&inst).map_err(|e| e.to_string())?;
        ensure(is_reduced(red.final_instance()), || format!("{p:?} not reduced"))?;
        near("initial ratio", red.gamma_initial, common::gamma(&inst.values()), 1e-9)?;
        for leg in &red.legs {
            legs += 1;
            let mut prev = common::gamma(&leg.at(0.0).values());
            for k in 1..=16 {
                let g = common::gamma(&leg.at(k as f64 / 16.0).values());
                ensure(g >= prev - 1e-9, || format!("ratio drops {prev} -> {g} along a leg from {p:?}"))?;
                prev = g;
            }
        }
        ensure(red.gamma_final >= red.gamma_initial - 1e-9, || format!("net decrease at {p:?}"))?;
    }
    Ok(format!("1e3 instances, {legs} legs, all non-decreasing"))
}

fn hypothesis_curve() -> Outcome {
    near("hypothesis(5)", gamma_hypothesis(5).unwrap(), ALPHA, 1e-12)?;
    for k in 2..=10 {
        let m = clustering_max(k).map_err(|e| e.to_string())?;
        near(&format!("hypothesis({})", 2 * k + 1), gamma_hypothesis(2 * k + 1).unwrap(), m.gamma, 1e-12)?;
        near(&format!("closed form k = {k}"), gamma_hypothesis_k(k).unwrap(), m.gamma, 1e-12)?;
        let mut pos = vec![0.0; k];
        pos.extend(std::iter::repeat_n(m.t, k));
        pos.push(m.t + 0.5);
        near(&format!("oracle k = {k}"), common::gamma(&pos), m.gamma, 1e-9)?;
    }
    let k1 = clustering_max(1).map_err(|e| e.to_string())?;
    near("k = 1 maximum", k1.gamma, 1.25, 1e-9)?;
    let h7 = gamma_hypothesis(7).unwrap();
    let r = random_search(7, 1_000_000, 3).map_err(|e| e.to_string())?;
    ensure(r.best_gamma <= h7 + 5e-3, || format!("n = 7 random best {} above {h7} + 5e-3", r.best_gamma))?;
    Ok(format!("k = 2..10 agree; k = 1 {:.12}; n = 7 random {:.9} vs {h7:.9}", k1.gamma, r.best_gamma))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("worst-instance", worst_instance),
        ("tightness-sweep", tightness_sweep),
        ("upper-bound-search", upper_bound_search),
        ("sc-bound", sc_bound),
        ("strategyproofness", strategyproofness),
        ("optimum-at-agent", optimum_at_agent),
        ("large-arc-and-opt-bound", large_arc_and_opt_bound),
        ("regional-equivalence", regional_equivalence),
        ("reduction-monotonicity", reduction_monotonicity),
        ("hypothesis-curve", hypothesis_curve),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name:<26} {secs:>7.2}s  {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name:<26} {secs:>7.2}s  {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
