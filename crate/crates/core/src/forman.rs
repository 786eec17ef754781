//! Forman-Ricci curvature and its cycle-augmented variants.
//!
//! The plain curvature of an edge `(u, v)` is `4 - deg(u) - deg(v)`. The
//! augmented curvature `AF_n` fills every simple cycle of length at most `n`
//! with a 2-cell and evaluates Forman's formula on the resulting complex,
//! which only needs the cycle statistics collected by [`CycleCensus`].

use std::collections::BTreeMap;

use crate::curvature::{CurvatureVector, Method};
use crate::cycles::CycleCensus;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub fn frc(g: &Graph, e: Edge) -> Result<i64> {
    let i = g.edge_index(e).ok_or(Error::MissingEdge(e))?;
    Ok(frc_dense(g.adjacency(), g.dense_edges()[i]))
}

pub(crate) fn frc_dense(adj: &[Vec<usize>], (u, v): (usize, usize)) -> i64 {
    4 - adj[u].len() as i64 - adj[v].len() as i64
}

pub fn frc_all(g: &Graph) -> CurvatureVector {
    let values = g
        .dense_edges()
        .iter()
        .enumerate()
        .map(|(i, &uv)| (g.edge_at(i), frc_dense(g.adjacency(), uv) as f64))
        .collect();
    CurvatureVector::new(Method::Frc, values)
}

fn census_edge(g: &Graph, census: &CycleCensus, e: Edge) -> Result<usize> {
    g.edge_index(e).ok_or(Error::MissingEdge(e))?;
    let id = census.edge_id(e).map_err(|_| Error::Mismatch(format!("census does not contain edge {e}")))?;
    let base = census.base_graph();
    for v in [e.0, e.1] {
        let in_census = census.dense_degree(base.index_of(v).unwrap()) as usize;
        if g.degree(v) != Some(in_census) {
            return Err(Error::Mismatch(format!("degree of vertex {v} differs between graph and census")));
        }
    }
    Ok(id)
}

/// Augmented Forman curvature of `e`, using every cycle in `census`.
pub fn afrc(g: &Graph, census: &CycleCensus, e: Edge) -> Result<i64> {
    census_edge(g, census, e).map(|id| census.afrc_by_id(id))
}

/// The same quantity evaluated through the 2-complex face formula rather
/// than as an augmentation of the plain Forman curvature.
pub fn afrc_face_form(g: &Graph, census: &CycleCensus, e: Edge) -> Result<i64> {
    census_edge(g, census, e).map(|id| census.afrc_face_form_by_id(id))
}

/// `AF_n` for every live edge of a census.
pub fn afrc_from_census(census: &CycleCensus) -> CurvatureVector {
    let base = census.base_graph();
    let values: BTreeMap<Edge, f64> = (0..base.edge_count())
        .filter(|&i| census.is_alive(i))
        .map(|i| (base.edge_at(i), census.afrc_by_id(i) as f64))
        .collect();
    CurvatureVector::new(Method::afrc(census.max_len()).unwrap(), values)
}

/// `AF_n` for every edge, counting simple cycles of length `3..=max_len`.
pub fn afrc_all(g: &Graph, max_len: usize) -> Result<CurvatureVector> {
    Ok(afrc_from_census(&CycleCensus::build(g, max_len)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn worked_graph() -> Graph {
        parse_edge_list("1 2\n1 4\n1 5\n1 6\n2 3\n2 5\n2 7\n2 8\n3 4\n7 8\n").unwrap()
    }

    fn complete(n: u64) -> Graph {
        Graph::from_edges((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn plain_forman_examples() {
        assert_eq!(frc(&worked_graph(), Edge(1, 2)).unwrap(), -5);
        assert_eq!(frc(&Graph::from_edges([(0, 1)]).unwrap(), Edge(0, 1)).unwrap(), 2);
        let k4 = complete(4);
        assert!(k4.edges().all(|e| frc(&k4, e).unwrap() == -2));
        assert!(matches!(frc(&k4, Edge(0, 9)), Err(Error::MissingEdge(_))));
    }

    #[test]
    fn worked_augmented_value() {
        let g = worked_graph();
        let census = CycleCensus::build(&g, 4).unwrap();
        assert_eq!(afrc(&g, &census, Edge(1, 2)).unwrap(), 0);
        assert_eq!(afrc_face_form(&g, &census, Edge(1, 2)).unwrap(), 0);
    }

    #[test]
    fn triangle_value() {
        let k3 = complete(3);
        let cv = afrc_all(&k3, 3).unwrap();
        assert_eq!(cv.method, Method::Afrc3);
        assert!(cv.to_vec().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn acyclic_reduces_to_forman() {
        let star = Graph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        for n in 3..=5 {
            assert_eq!(afrc_all(&star, n).unwrap().values, frc_all(&star).values);
        }
        let c5 = Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(afrc_all(&c5, 4).unwrap().values, frc_all(&c5).values);
        assert_ne!(afrc_all(&c5, 5).unwrap().values, frc_all(&c5).values);
    }

    #[test]
    fn census_graph_mismatch_is_rejected() {
        let g = worked_graph();
        let census = CycleCensus::build(&g, 4).unwrap();
        let smaller = g.remove_edge(Edge(7, 8)).unwrap();
        assert!(matches!(afrc(&smaller, &census, Edge(2, 7)), Err(Error::Mismatch(_))));
        assert!(matches!(afrc(&g, &census, Edge(3, 5)), Err(Error::MissingEdge(_))));
    }
}
