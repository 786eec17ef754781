//! Ollivier-Ricci curvature with uniform neighbour measures.
//!
//! For an edge `(x, y)` the curvature is `1 - W1(μx, μy)`, where `μv` spreads
//! unit mass evenly over the neighbours of `v` and ground distances are hop
//! counts in the current graph. Every neighbour of `x` is within three hops of
//! every neighbour of `y` through the edge itself, so ground distances are
//! 0, 1, 2 or 3 and the curvature lies in `[-2, 1]`.
//!
//! Scaling the measures by `deg(x)·deg(y)` turns the transport problem into
//! one with integer supplies and costs, which the solver handles exactly; the
//! only rounding is the final division.

use rayon::prelude::*;

use crate::curvature::{CurvatureVector, Method};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
pub use crate::transport::{wasserstein1, DiscreteMeasure, TransportProblem};

pub fn neighbor_measure(g: &Graph, v: u64) -> Result<DiscreteMeasure> {
    let i = g.index_of(v).ok_or(Error::MissingVertex(v))?;
    let support: Vec<u64> = g.adjacency()[i].iter().map(|&w| g.id_of(w)).collect();
    if support.is_empty() {
        return Err(Error::IsolatedVertex(v));
    }
    DiscreteMeasure::uniform(support)
}

fn sorted_intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Hop distance between `a` and `b`, capped at 3. Exact whenever the two
/// vertices are neighbours of the endpoints of a common edge.
pub(crate) fn capped_distance(adj: &[Vec<usize>], a: usize, b: usize) -> u32 {
    if a == b {
        0
    } else if adj[a].binary_search(&b).is_ok() {
        1
    } else if sorted_intersects(&adj[a], &adj[b]) {
        2
    } else {
        3
    }
}

/// Curvature of the edge between dense vertices `x` and `y`.
pub(crate) fn orc_dense(adj: &[Vec<usize>], x: usize, y: usize) -> f64 {
    let nx = &adj[x];
    let ny = &adj[y];
    let (dx, dy) = (nx.len(), ny.len());
    debug_assert!(dx > 0 && dy > 0);
    let mut cost = Vec::with_capacity(dx * dy);
    for &a in nx {
        for &b in ny {
            cost.push(capped_distance(adj, a, b) as f64);
        }
    }
    let supply = vec![dy as f64; dx];
    let demand = vec![dx as f64; dy];
    let scaled = crate::transport::min_cost_transport(&supply, &demand, &cost);
    1.0 - scaled / (dx * dy) as f64
}

/// The transport problem between the neighbour measures of the endpoints of
/// `e`, with hop distances in `g`.
pub fn edge_transport_problem(g: &Graph, e: Edge) -> Result<TransportProblem> {
    g.edge_index(e).ok_or(Error::MissingEdge(e))?;
    let supply = neighbor_measure(g, e.0)?;
    let demand = neighbor_measure(g, e.1)?;
    let adj = g.adjacency();
    let cost = supply
        .support()
        .iter()
        .map(|&a| {
            let ai = g.index_of(a).unwrap();
            demand.support().iter().map(|&b| capped_distance(adj, ai, g.index_of(b).unwrap()) as f64).collect()
        })
        .collect();
    TransportProblem::new(supply, demand, cost)
}

pub fn orc(g: &Graph, e: Edge) -> Result<f64> {
    let i = g.edge_index(e).ok_or(Error::MissingEdge(e))?;
    let (x, y) = g.dense_edges()[i];
    Ok(orc_dense(g.adjacency(), x, y))
}

pub fn orc_all(g: &Graph) -> CurvatureVector {
    let adj = g.adjacency();
    let values: Vec<f64> = g.dense_edges().par_iter().map(|&(x, y)| orc_dense(adj, x, y)).collect();
    CurvatureVector::new(Method::Orc, g.edges().zip(values).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn complete(n: u64) -> Graph {
        Graph::from_edges((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn measures() {
        let star = Graph::from_edges([(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mu = neighbor_measure(&star, 0).unwrap();
        assert_eq!(mu.support(), &[1, 2, 3, 4]);
        assert!(mu.mass().iter().all(|&m| m == 0.25));
        let leaf = neighbor_measure(&star, 3).unwrap();
        assert_eq!(leaf.support(), &[0]);
        assert_eq!(leaf.mass(), &[1.0]);

        let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n").unwrap();
        let mu = neighbor_measure(&g, 1).unwrap();
        assert_eq!(mu.support(), &[2, 4, 5, 6]);
        assert_eq!(mu.mass_at(4), 0.25);
        assert_eq!(mu.mass_at(1), 0.0);

        let lonely = Graph::from_parts([9], [(0, 1)]).unwrap();
        assert!(matches!(neighbor_measure(&lonely, 9), Err(Error::IsolatedVertex(9))));
        assert!(matches!(neighbor_measure(&lonely, 7), Err(Error::MissingVertex(7))));
    }

    #[test]
    fn triangle_is_one_half() {
        let k3 = complete(3);
        let cv = orc_all(&k3);
        assert_eq!(cv.len(), 3);
        assert!(cv.to_vec().iter().all(|&v| (v - 0.5).abs() < 1e-12));
    }

    #[test]
    fn edgeless_graph_gives_empty_vector() {
        let g = Graph::from_parts([0, 1, 2], []).unwrap();
        assert!(orc_all(&g).is_empty());
    }

    #[test]
    fn scaled_route_matches_general_solver() {
        let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n").unwrap();
        for e in g.edges() {
            let p = edge_transport_problem(&g, e).unwrap();
            let general = 1.0 - wasserstein1(&p).unwrap();
            assert!((general - orc(&g, e).unwrap()).abs() < 1e-12, "{e}");
        }
    }

    #[test]
    fn capped_distances_agree_with_bfs() {
        let g = parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n").unwrap();
        let adj = g.adjacency();
        for e in g.edges() {
            let nx = g.neighbors(e.0).unwrap().collect::<Vec<_>>();
            let ny = g.neighbors(e.1).unwrap().collect::<Vec<_>>();
            let d = g.bfs_distances(&nx, 3).unwrap();
            for &a in &nx {
                for &b in &ny {
                    let got = capped_distance(adj, g.index_of(a).unwrap(), g.index_of(b).unwrap());
                    assert_eq!(got as usize, d[&(a, b)]);
                }
            }
        }
    }
}
