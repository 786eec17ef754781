//! How well each curvature separates within- from between-community edges,
//! averaged over seeds.

use graph_curvature::generators::{hbg, sbm};
use graph_curvature::{compute, curvature_gap, Method};

fn main() -> anyhow::Result<()> {
    let seeds = 5;
    for (name, model) in [("SBM(10,20,0.7,0.05)", 0), ("HBG(50,0.5,0.05)", 1)] {
        println!("{name}");
        for method in [Method::Frc, Method::Afrc3, Method::Afrc4, Method::Orc] {
            let mut total = 0.0;
            let mut within_higher = 0;
            for seed in 0..seeds {
                let (g, truth) = if model == 0 { sbm(10, 20, 0.7, 0.05, seed)? } else { hbg(50, 0.5, 0.05, seed)? };
                let report = curvature_gap(&compute(&g, method)?, &truth)?;
                total += report.gap;
                within_higher += usize::from(report.kappa_within > report.kappa_between);
            }
            println!(
                "  {method:<6} mean gap {:.2}, within edges curve more on {within_higher}/{seeds}",
                total / seeds as f64
            );
        }
    }
    Ok(())
}
