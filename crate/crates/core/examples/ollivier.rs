//! Ollivier-Ricci curvature, and the transport problem behind one edge.

use graph_curvature::ollivier::{edge_transport_problem, neighbor_measure, orc_all, wasserstein1};
use graph_curvature::{parse_edge_list, Edge};

fn main() -> anyhow::Result<()> {
    let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n")?;
    for (e, k) in orc_all(&g).iter() {
        println!("{e}\t{k:.4}");
    }

    let e = Edge::new(1, 2);
    let mu = neighbor_measure(&g, 1)?;
    println!("\nmeasure at 1: {:?} with mass {:?}", mu.support(), mu.mass());
    let problem = edge_transport_problem(&g, e)?;
    let w1 = wasserstein1(&problem)?;
    println!("W1 = {w1:.4}, so ORC{e} = {:.4}", 1.0 - w1);
    Ok(())
}
