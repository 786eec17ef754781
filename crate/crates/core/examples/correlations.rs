//! Pearson correlation between curvature notions on one graph.

use graph_curvature::generators::{erdos_renyi, sbm};
use graph_curvature::{compute, pearson, Graph, Method};

fn table(name: &str, g: &Graph) -> anyhow::Result<()> {
    let methods = [Method::Frc, Method::Afrc3, Method::Afrc4, Method::Orc];
    let values: Vec<_> = methods.iter().map(|&m| compute(g, m)).collect::<Result<_, _>>()?;
    println!("{name}: {} edges", g.edge_count());
    for (i, a) in methods.iter().enumerate() {
        for (j, b) in methods.iter().enumerate().skip(i + 1) {
            println!("  {a:<6} {b:<6} {:+.3}", pearson(&values[i], &values[j])?);
        }
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    table("ER(1000, 0.003)", &erdos_renyi(1000, 0.003, 0)?)?;
    table("SBM(10,20,0.7,0.05)", &sbm(10, 20, 0.7, 0.05, 0)?.0)
}
