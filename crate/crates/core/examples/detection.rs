//! Community detection by deleting edges in curvature order.
//!
//! `cargo run --release --example detection -- afrc3 track` runs one method
//! and threshold mode on a planted partition and reports the accuracy.

use graph_curvature::detection::detect_communities_with;
use graph_curvature::generators::sbm;
use graph_curvature::{accuracy, DetectionConfig, Method, Threshold};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let method: Method = args.next().as_deref().unwrap_or("afrc3").parse()?;
    let threshold: Threshold = args.next().as_deref().unwrap_or("track").parse()?;
    let (g, truth) = sbm(6, 15, 0.7, 0.05, 11)?;
    let cfg = DetectionConfig::new(method).threshold(threshold);

    let mut trace = Vec::new();
    let result =
        detect_communities_with(&g, &cfg, |p| trace.push(p.residual_graph().connected_components().community_count()))?;
    for (i, (e, parts)) in result.deletions.iter().zip(&trace).enumerate().filter(|(i, _)| i % 10 == 0) {
        println!("step {i:>3}: removed {e}, {parts} components");
    }
    println!(
        "\n{method} ({:?}, threshold {:.3}, {} updates): {} deletions, {} communities, accuracy {:.2}, {:?}",
        cfg.direction,
        result.threshold_used,
        result.threshold_updates,
        result.iterations,
        result.partition.community_count(),
        accuracy(&result.partition, &truth)?,
        result.wall_time,
    );
    Ok(())
}
