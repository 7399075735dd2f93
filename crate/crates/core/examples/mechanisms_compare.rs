//! PCD, random dictator and their mixtures on a few instances.

use cml::mechanism::{agent_expected_cost, strategyproofness_probe};
use cml::{gamma, CirclePoint, Instance, Mechanism};

fn main() -> cml::Result<()> {
    let s = (2.0 - 2f64.sqrt()) / 2.0;
    let instances = [
        ("worst", vec![0.0, 0.0, s, s + 0.5, s + 0.5]),
        ("equidistant", vec![0.0, 0.2, 0.4, 0.6, 0.8]),
        ("clustered", vec![0.0, 0.01, 0.02, 0.4, 0.7]),
    ];
    let mechanisms = [
        Mechanism::Pcd,
        Mechanism::RandomDictator,
        Mechanism::mixture(0.5)?,
        Mechanism::mixture(0.25)?,
    ];
    println!("{:<12} {:>8} {:>8} {:>10} {:>10}", "instance", "pcd", "rd", "mix 0.5", "mix 0.25");
    for (name, pos) in &instances {
        let inst = Instance::from_positions(pos)?;
        let row: Vec<String> = mechanisms.iter().map(|m| format!("{:.6}", gamma(&inst, m).gamma)).collect();
        println!("{name:<12} {:>8} {:>8} {:>10} {:>10}", row[0], row[1], row[2], row[3]);
    }

    let inst = Instance::from_positions(&instances[0].1)?;
    let out = Mechanism::Pcd.outcome(&inst);
    println!("\nexpected cost per agent under PCD on the worst instance:");
    for i in 0..inst.len() {
        println!("  agent {}  {:.6}", i + 1, agent_expected_cost(&inst, &out, i)?);
    }
    let probe = strategyproofness_probe(&inst, 2, CirclePoint::new(0.6)?)?;
    println!(
        "agent 3 reporting 0.6: truthful {:.6}, misreport {:.6}",
        probe.truthful_cost, probe.deviation_cost
    );
    Ok(())
}
