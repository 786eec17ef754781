//! Curvature summary for a user-supplied edge list.
//!
//! `cargo run --release --example load_edge_list -- graph.txt [labels.txt]`

use graph_curvature::{compute, curvature_gap, parse_edge_list, parse_labels, Method};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().ok_or_else(|| anyhow::anyhow!("usage: load_edge_list <edges> [labels]"))?;
    let g = parse_edge_list(&std::fs::read_to_string(&path)?)?;
    let truth = args.next().map(|p| anyhow::Ok(parse_labels(&std::fs::read_to_string(p)?)?)).transpose()?;
    println!(
        "{path}: {} vertices, {} edges, {} components",
        g.vertex_count(),
        g.edge_count(),
        g.connected_components().community_count()
    );
    for method in Method::ALL {
        let cv = compute(&g, method)?;
        let values = cv.to_vec();
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        print!("{method:<6} min {lo:>8.3} mean {mean:>8.3} max {hi:>8.3}");
        if let Some(t) = &truth {
            print!("  gap {:.3}", curvature_gap(&cv, t)?.gap);
        }
        println!();
    }
    Ok(())
}
