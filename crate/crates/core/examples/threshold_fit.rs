//! Fit two Gaussians to a curvature distribution and print the decision
//! threshold with a text histogram.

use graph_curvature::analysis::BinLayout;
use graph_curvature::generators::sbm;
use graph_curvature::{compute, fit_two_gaussians, Method};

fn main() -> anyhow::Result<()> {
    let method: Method = std::env::args().nth(1).as_deref().unwrap_or("afrc3").parse()?;
    let (g, truth) = sbm(2, 40, 0.7, 0.1, 3)?;
    let cv = compute(&g, method)?;
    let fit = fit_two_gaussians(&cv.to_vec())?;
    println!(
        "{method}: N({:.2}, {:.2}) x {:.2} + N({:.2}, {:.2}) x {:.2}",
        fit.mu1, fit.sigma1, fit.weight1, fit.mu2, fit.sigma2, fit.weight2
    );
    println!("threshold {:.3} after {} EM steps (converged: {})", fit.delta, fit.iterations, fit.converged);

    let (within, between) = cv.split(&truth)?;
    let layout = BinLayout::spanning(&cv.to_vec(), 24)?;
    let (w, b) = (layout.count(&within), layout.count(&between));
    println!("\n{:>8}  within (#) / between (o)", "bin");
    for (k, lower) in layout.edges().enumerate() {
        let mark = if (lower..lower + layout.width).contains(&fit.delta) { " <- threshold" } else { "" };
        println!("{lower:>8.2}  {}{}{mark}", "#".repeat(w[k] / 4), "o".repeat(b[k] / 4));
    }
    Ok(())
}
