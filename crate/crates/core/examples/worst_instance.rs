//! The five-agent instance where PCD attains its worst ratio.

use cml::{pcd_gamma, EvaluationReport, Instance, Mechanism, ALPHA};

fn main() -> cml::Result<()> {
    let s = (2.0 - 2f64.sqrt()) / 2.0;
    let inst = Instance::from_positions(&[0.0, 0.0, s, s + 0.5, s + 0.5])?;
    print!("{}", EvaluationReport::new(&inst, &Mechanism::Pcd).to_text());
    println!("7 - 4 sqrt 2   {ALPHA:.12}");
    println!("difference     {:e}", pcd_gamma(&inst) - ALPHA);
    Ok(())
}
