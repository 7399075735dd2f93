//! Worst ratio found numerically against the closed-form hypothesis.

use cml::ratio::{clustering_max, gamma_hypothesis, t_max};
use cml::search::{curve_csv, hypothesis_dataset, CurveBudget};

fn main() -> cml::Result<()> {
    for k in 1..=5 {
        let m = clustering_max(k)?;
        let closed = gamma_hypothesis(2 * k + 1).ok();
        let t = t_max(k).ok();
        println!("k = {k}: t* = {:.9} (closed {t:?}), gamma = {:.12} (closed {closed:?})", m.t, m.gamma);
    }
    let budget = CurveBudget { samples: 2_000, iters: 50, ..Default::default() };
    print!("{}", curve_csv(&hypothesis_dataset(21, &budget)?));
    Ok(())
}
