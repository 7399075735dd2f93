//! Every sampled property suite at a small budget.

use cml::{run_suite, Suite, SuiteOptions};

fn main() {
    let mut all = true;
    for suite in Suite::ALL {
        let report = run_suite(suite, &SuiteOptions::new(5_000, 1));
        all &= report.passed();
        println!("{}", report.summary());
    }
    std::process::exit(if all { 0 } else { 3 });
}
