//! Forman and augmented Forman curvature of edge (1, 2) in the eight-vertex
//! worked example.

use graph_curvature::forman::{afrc, frc};
use graph_curvature::{parse_edge_list, CycleCensus, Edge};

fn main() -> anyhow::Result<()> {
    let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n")?;
    let e = Edge::new(1, 2);
    println!("deg(1) = {}, deg(2) = {}", g.degree(1).unwrap(), g.degree(2).unwrap());
    println!("FRC{e} = {}", frc(&g, e)?);
    for len in 3..=5 {
        let census = CycleCensus::build(&g, len)?;
        println!("AF{len}{e} = {}  ({} cycles through the edge)", afrc(&g, &census, e)?, census.cycle_count(e)?);
    }
    Ok(())
}
