//! Grid, random and hybrid searches for the worst five-agent profile.

use cml::search::{grid_search, hybrid_search, random_search, refine, HybridConfig};

fn main() -> cml::Result<()> {
    let grid = grid_search(5, 0.02)?;
    println!("grid 0.02     {:.9}  {} evaluations", grid.best_gamma, grid.evaluations);

    let random = random_search(5, 200_000, 42)?;
    println!("random 2e5    {:.9}  {} evaluations", random.best_gamma, random.evaluations);

    let refined = refine(&random.best_profile, 0.01, 0.5, 2_000)?;
    println!("refined       {:.12}  {:?}", refined.best_gamma, refined.best_profile.as_slice());

    let cfg = HybridConfig { grid: Some(0.01), samples: 100_000, seed: 7, top: 20, ..Default::default() };
    let hybrid = hybrid_search(&cfg)?;
    println!("hybrid        {:.12}  {} evaluations", hybrid.best_gamma, hybrid.evaluations);
    println!("{}", serde_json::to_string(&hybrid).expect("serializable"));
    Ok(())
}
