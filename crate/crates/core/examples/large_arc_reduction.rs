//! Sliding the flank agents of a large-arc instance until it collapses.

use cml::ratio::large_arc_reduce;
use cml::{ArcProfile, Instance};

fn main() -> cml::Result<()> {
    let inst = Instance::from_profile(&ArcProfile::new(vec![0.55, 0.1, 0.15, 0.08, 0.12])?)?;
    let red = large_arc_reduce(&inst)?;
    println!("large-arc agent {}", red.large_arc_agent + 1);
    println!("start  {:?}  gamma {:.9}", red.initial.values(), red.gamma_initial);
    for leg in &red.legs {
        println!(
            "agent {} slides toward agent {}: gamma {:.9} -> {:.9}",
            leg.agent + 1,
            leg.target + 1,
            leg.gamma_start,
            leg.gamma_end
        );
    }
    println!("end    {:?}  gamma {:.9}", red.final_instance().values(), red.gamma_final);
    Ok(())
}
