//! Maxima of the two-pair family, case by case.

use cml::ratio::{two_pair_gamma, two_pair_sweep, two_pair_table, TwoPairCase};

fn main() -> cml::Result<()> {
    let step = 1e-3;
    for row in two_pair_table(step)? {
        println!("{:<8} s = {:.6}  t = {:.6}  gamma = {:.9}", row.case.name(), row.s, row.t, row.gamma);
    }
    let best = two_pair_sweep(step)?;
    println!("overall  {} with gamma = {:.12}", best.case.name(), best.gamma);

    // a slice through B1 at t = 1/2
    for k in 1..=5 {
        let s = 0.1 * k as f64 - 0.05;
        if let Ok(g) = two_pair_gamma(s, 0.5, TwoPairCase::B1) {
            println!("  B1 s = {s:.2}  {g:.6}");
        }
    }
    Ok(())
}
