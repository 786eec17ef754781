//! Short cycles through each edge and how they change when an edge goes.

use graph_curvature::{enumerate_cycles, parse_edge_list, CycleCensus, Edge};

fn main() -> anyhow::Result<()> {
    let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n")?;
    for c in enumerate_cycles(&g, 5)? {
        println!("cycle {:?}", c.vertices());
    }

    let census = CycleCensus::build(&g, 4)?;
    let e = Edge::new(1, 2);
    println!("\nedge {e}: {} cycles", census.cycle_count(e)?);
    for (f, (aligned, opposed)) in census.nonadjacent_pairs(e)? {
        println!("  shares a cycle with {f}: aligned {aligned}, opposed {opposed}");
    }

    let (after, touched) = census.delete_edge(Edge::new(2, 5))?;
    println!("\nafter deleting (2, 5): {} cycles remain; summaries changed on", after.cycle_total());
    for f in touched {
        println!("  {f}");
    }
    Ok(())
}
