//! Sample each random graph model and summarise what came out.

use graph_curvature::ModelParams;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let models = [
        ModelParams::Er { n: 200, p: 0.03, seed },
        ModelParams::Bg { n: 100, p: 0.05, seed },
        ModelParams::Sbm { l: 10, k: 20, p: 0.7, q: 0.05, seed },
        ModelParams::Tsbm { l: 2, k: 50, p: 0.1, q: 0.03, seed },
        ModelParams::Hbg { n: 50, p: 0.5, q: 0.05, seed },
    ];
    for params in models {
        let (g, truth) = params.generate()?;
        let within = truth.as_ref().map(|t| g.edges().filter(|&e| t.is_within(e) == Some(true)).count());
        println!(
            "{:<70} {:>4} vertices {:>5} edges {:>3} components{}",
            serde_json::to_string(&params)?,
            g.vertex_count(),
            g.edge_count(),
            g.connected_components().community_count(),
            within.map(|w| format!(", {w} within-community")).unwrap_or_default(),
        );
    }
    Ok(())
}
