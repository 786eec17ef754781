//! Every Forman-type curvature on a small graph with triangles and squares.

use graph_curvature::{compute, Graph, Method};

fn main() -> anyhow::Result<()> {
    // a triangle glued to a square along edge (0, 1), plus a pendant edge
    let g = Graph::from_edges([(0, 1), (1, 2), (0, 2), (1, 3), (3, 4), (0, 4), (4, 5)])?;
    let methods = [Method::Frc, Method::Afrc3, Method::Afrc4, Method::Afrc5];
    let columns: Vec<_> = methods.iter().map(|&m| compute(&g, m)).collect::<Result<_, _>>()?;
    println!("edge     frc  afrc3  afrc4  afrc5");
    for e in g.edges() {
        let row: Vec<String> = columns.iter().map(|cv| format!("{:>5}", cv.get(e).unwrap())).collect();
        println!("{:<8} {}", e.to_string(), row.join("  "));
    }
    Ok(())
}
