//! Closed-form ratios on the four distance regions of five-agent profiles.

use cml::ratio::{region_formula, region_gamma, regions_of, RegionTag};
use cml::{pcd_gamma, ArcProfile, Instance};

fn main() -> cml::Result<()> {
    let profiles = [
        vec![0.2; 5],
        vec![0.1, 0.15, 0.3, 0.25, 0.2],
        vec![0.05, 0.3, 0.2, 0.1, 0.35],
    ];
    for p in profiles {
        let prof = ArcProfile::new(p)?;
        let direct = pcd_gamma(&Instance::from_profile(&prof)?);
        print!("{:?}  direct {direct:.9}", prof.as_slice());
        let regions = regions_of(&prof)?;
        if regions.is_empty() {
            print!("  outside every region");
        }
        for region in regions {
            print!("  {region} {:.9}", region_gamma(&prof, region)?);
        }
        println!();
    }

    let r = 15f64.sqrt();
    let (x, y) = ((r - 3.0) / 6.0, 1.0 - r / 6.0);
    let stationary = ArcProfile::new(vec![x, y, 0.0, y, x])?;
    println!("AC form at its boundary stationary point: {:.12}", region_formula(&stationary, RegionTag::AC)?);
    println!("5 - sqrt 15:                              {:.12}", 5.0 - r);
    Ok(())
}
