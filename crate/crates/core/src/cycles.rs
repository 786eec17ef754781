//! Short simple cycles and the per-edge cycle statistics that the augmented
//! Forman curvature consumes.
//!
//! For a pair of distinct edges `e < f` on a common cycle, the count matrix
//! entry `Γ(e, f)` is the number of cycles in which the two edges are
//! traversed in the same sense (both from smaller to larger vertex, or both
//! the other way), and `Γ(f, e)` is the number of cycles in which they are
//! traversed in opposite senses. `Γ(e, e)` counts the cycles through `e`.
//!
//! The full matrix is never materialized. For every edge the census keeps the
//! number of cycles through it and, for every other edge it shares a cycle
//! with, the pair `(aligned, unaligned)` of cycle counts. Alignment is a
//! symmetric relation, so the same pair serves both rows of the matrix.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const MIN_CYCLE_LEN: usize = 3;
pub const MAX_CYCLE_LEN: usize = 5;

fn check_len(max_len: usize) -> Result<()> {
    if (MIN_CYCLE_LEN..=MAX_CYCLE_LEN).contains(&max_len) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "maximum cycle length must be in {MIN_CYCLE_LEN}..={MAX_CYCLE_LEN}, got {max_len}"
        )))
    }
}

/// A simple cycle in canonical form: the smallest vertex first, followed by
/// the smaller of its two cycle neighbours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cycle {
    vertices: Vec<u64>,
}

impl Cycle {
    /// Canonicalizes any rotation or reflection of a vertex sequence. Returns
    /// `None` for sequences shorter than three or with repeated vertices.
    pub fn new(mut vertices: Vec<u64>) -> Option<Self> {
        let n = vertices.len();
        if n < 3 {
            return None;
        }
        let distinct: BTreeSet<u64> = vertices.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
        vertices.rotate_left(start);
        if vertices[1] > vertices[n - 1] {
            vertices[1..].reverse();
        }
        Some(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Edges in traversal order, each with whether the canonical traversal
    /// crosses it from its smaller to its larger endpoint.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, bool)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (Edge::new(a, b), a < b)
        })
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|(f, _)| f == e)
    }

    fn forward(&self, e: Edge) -> Option<bool> {
        self.edges().find(|&(f, _)| f == e).map(|(_, fwd)| fwd)
    }

    /// Whether `e` and `f` are traversed in the same sense. Reversing the
    /// traversal flips both senses, so the answer does not depend on the
    /// direction chosen.
    pub fn aligned(&self, e: Edge, f: Edge) -> Result<bool> {
        if e == f {
            return Err(Error::InvalidParameter(format!("alignment needs two distinct edges, got {e} twice")));
        }
        let fe = self.forward(e).ok_or(Error::MissingEdge(e))?;
        let ff = self.forward(f).ok_or(Error::MissingEdge(f))?;
        Ok(fe == ff)
    }
}

/// Calls `visit` once per simple cycle of length `3..=max_len`, with the
/// dense vertex sequence in canonical form.
pub(crate) fn for_each_dense_cycle<F: FnMut(&[usize])>(adj: &[Vec<usize>], max_len: usize, mut visit: F) {
    let mut path = Vec::with_capacity(max_len);
    for s in 0..adj.len() {
        path.clear();
        path.push(s);
        extend(adj, max_len, &mut path, &mut visit);
    }
}

fn extend<F: FnMut(&[usize])>(adj: &[Vec<usize>], max_len: usize, path: &mut Vec<usize>, visit: &mut F) {
    let s = path[0];
    let last = *path.last().unwrap();
    // neighbours are sorted, so skip straight past everything <= s
    let from = adj[last].partition_point(|&w| w <= s);
    for &w in &adj[last][from..] {
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        let len = path.len();
        if len >= 3 && path[1] < w && adj[w].binary_search(&s).is_ok() {
            visit(path);
        }
        if len < max_len {
            extend(adj, max_len, path, visit);
        }
        path.pop();
    }
}

/// All simple cycles of length `3..=max_len`, each exactly once, sorted.
/// Cycles with chords are included.
pub fn enumerate_cycles(g: &Graph, max_len: usize) -> Result<Vec<Cycle>> {
    check_len(max_len)?;
    let mut out = Vec::new();
    for_each_dense_cycle(g.adjacency(), max_len, |c| {
        out.push(Cycle { vertices: c.iter().map(|&i| g.id_of(i)).collect() });
    });
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Default)]
struct EdgeStats {
    cycles: u32,
    // other edge -> (aligned, unaligned), for edges sharing a vertex with this one
    shared: HashMap<u32, (u32, u32)>,
    // same, for edges on a common cycle that share no vertex
    opposite: HashMap<u32, (u32, u32)>,
}

#[derive(Clone, Debug)]
struct StoredCycle {
    edges: Vec<u32>,
    forward: Vec<bool>,
}

/// Per-edge aggregates of the count matrix, as seen from one edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeSummary {
    pub cycle_count: u32,
    pub shared_neighbors: BTreeSet<Edge>,
    pub nonadjacent_pairs: BTreeMap<Edge, (u32, u32)>,
}

/// Cycle statistics for every edge of a graph, with support for deleting
/// edges one at a time. Edge positions refer to the graph the census was
/// built on; deleted edges stay in the index but are marked dead.
#[derive(Clone, Debug)]
pub struct CycleCensus {
    max_len: usize,
    graph: Graph,
    alive: Vec<bool>,
    degree: Vec<u32>,
    stats: Vec<EdgeStats>,
    cycles: Vec<Option<StoredCycle>>,
    edge_cycles: Vec<Vec<u32>>,
}

fn bump(map: &mut HashMap<u32, (u32, u32)>, key: u32, aligned: bool, delta: i32) {
    let entry = map.entry(key).or_insert((0, 0));
    let slot = if aligned { &mut entry.0 } else { &mut entry.1 };
    *slot = slot.checked_add_signed(delta).expect("census count underflow");
    if *entry == (0, 0) {
        map.remove(&key);
    }
}

impl CycleCensus {
    pub fn build(g: &Graph, max_len: usize) -> Result<Self> {
        check_len(max_len)?;
        let m = g.edge_count();
        let mut census = CycleCensus {
            max_len,
            graph: g.clone(),
            alive: vec![true; m],
            degree: g.adjacency().iter().map(|l| l.len() as u32).collect(),
            stats: vec![EdgeStats::default(); m],
            cycles: Vec::new(),
            edge_cycles: vec![Vec::new(); m],
        };
        for_each_dense_cycle(g.adjacency(), max_len, |c| {
            let n = c.len();
            let mut edges = Vec::with_capacity(n);
            let mut forward = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (c[i], c[(i + 1) % n]);
                edges.push(g.dense_edge_index(a, b).expect("cycle edge present") as u32);
                forward.push(a < b);
            }
            census.add_cycle(StoredCycle { edges, forward });
        });
        Ok(census)
    }

    fn add_cycle(&mut self, cycle: StoredCycle) {
        let id = self.cycles.len() as u32;
        self.apply(&cycle, 1);
        for &e in &cycle.edges {
            self.edge_cycles[e as usize].push(id);
        }
        self.cycles.push(Some(cycle));
    }

    fn apply(&mut self, cycle: &StoredCycle, delta: i32) {
        let n = cycle.edges.len();
        for i in 0..n {
            let e = cycle.edges[i] as usize;
            let c = &mut self.stats[e].cycles;
            *c = c.checked_add_signed(delta).expect("census count underflow");
            for j in 0..n {
                if i == j {
                    continue;
                }
                let f = cycle.edges[j];
                let aligned = cycle.forward[i] == cycle.forward[j];
                // in a simple cycle, two edges share a vertex iff they are consecutive
                let consecutive = (i + 1) % n == j || (j + 1) % n == i;
                let stats = &mut self.stats[e];
                let map = if consecutive { &mut stats.shared } else { &mut stats.opposite };
                bump(map, f, aligned, delta);
            }
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// The graph the census was originally built on.
    pub fn base_graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cycle_total(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_some()).count()
    }

    pub(crate) fn edge_id(&self, e: Edge) -> Result<usize> {
        match self.graph.edge_index(e) {
            Some(i) if self.alive[i] => Ok(i),
            _ => Err(Error::MissingEdge(e)),
        }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edge_id(e).is_ok()
    }

    pub(crate) fn is_alive(&self, id: usize) -> bool {
        self.alive[id]
    }

    pub(crate) fn dense_degree(&self, v: usize) -> u32 {
        self.degree[v]
    }

    /// `Γ(e, e)`: the number of cycles through `e`.
    pub fn cycle_count(&self, e: Edge) -> Result<u32> {
        Ok(self.stats[self.edge_id(e)?].cycles)
    }

    /// Count-matrix entry `Γ(e, f)`.
    pub fn gamma(&self, e: Edge, f: Edge) -> Result<u32> {
        let ei = self.edge_id(e)?;
        let fi = self.edge_id(f)? as u32;
        if e == f {
            return Ok(self.stats[ei].cycles);
        }
        let stats = &self.stats[ei];
        let (aligned, unaligned) = stats.shared.get(&fi).or_else(|| stats.opposite.get(&fi)).copied().unwrap_or((0, 0));
        Ok(if e < f { aligned } else { unaligned })
    }

    /// Edges sharing a vertex and at least one cycle with `e`.
    pub fn shared_neighbors(&self, e: Edge) -> Result<BTreeSet<Edge>> {
        let stats = &self.stats[self.edge_id(e)?];
        Ok(stats.shared.keys().map(|&f| self.graph.edge_at(f as usize)).collect())
    }

    /// Vertex-disjoint edges on a common cycle with `e`, with their
    /// `(aligned, unaligned)` cycle counts.
    pub fn nonadjacent_pairs(&self, e: Edge) -> Result<BTreeMap<Edge, (u32, u32)>> {
        let stats = &self.stats[self.edge_id(e)?];
        Ok(stats.opposite.iter().map(|(&f, &c)| (self.graph.edge_at(f as usize), c)).collect())
    }

    pub fn summary(&self, e: Edge) -> Result<EdgeSummary> {
        Ok(EdgeSummary {
            cycle_count: self.cycle_count(e)?,
            shared_neighbors: self.shared_neighbors(e)?,
            nonadjacent_pairs: self.nonadjacent_pairs(e)?,
        })
    }

    /// Aggregates of every live edge, keyed by edge. Two censuses of the same
    /// graph compare equal through this view regardless of how they were
    /// obtained.
    pub fn summaries(&self) -> BTreeMap<Edge, EdgeSummary> {
        (0..self.alive.len())
            .filter(|&i| self.alive[i])
            .map(|i| {
                let e = self.graph.edge_at(i);
                (e, self.summary(e).unwrap())
            })
            .collect()
    }

    /// Live cycles in canonical form, sorted.
    pub fn cycles(&self) -> Vec<Cycle> {
        let mut out: Vec<Cycle> = self
            .cycles
            .iter()
            .flatten()
            .map(|c| {
                let mut vertices = Vec::with_capacity(c.edges.len());
                for (k, &e) in c.edges.iter().enumerate() {
                    let (a, b) = self.graph.dense_edges()[e as usize];
                    vertices.push(self.graph.id_of(if c.forward[k] { a } else { b }));
                }
                Cycle::new(vertices).expect("stored cycles are simple")
            })
            .collect();
        out.sort();
        out
    }

    /// Augmented Forman curvature of a live edge by position, from the
    /// augmentation form `F(e) - Γ(e,e) + 2·#{e'~e sharing a cycle} - Σ_{e'≁e} |Γ(e,e') - Γ(e',e)|`.
    pub(crate) fn afrc_by_id(&self, id: usize) -> i64 {
        let (u, v) = self.graph.dense_edges()[id];
        let stats = &self.stats[id];
        let frc = 4 - self.degree[u] as i64 - self.degree[v] as i64;
        let opposite: i64 = stats.opposite.values().map(|&(a, b)| (a as i64 - b as i64).abs()).sum();
        frc - stats.cycles as i64 + 2 * stats.shared.len() as i64 - opposite
    }

    /// Same value from the face form
    /// `2 + Γ(e,e) - Σ_{e'~e} |Γ(e,e') + Γ(e',e) - 1| - Σ_{e'≁e} |Γ(e,e') - Γ(e',e)|`,
    /// where the first sum runs over every edge sharing a vertex with `e`.
    pub(crate) fn afrc_face_form_by_id(&self, id: usize) -> i64 {
        let (u, v) = self.graph.dense_edges()[id];
        let stats = &self.stats[id];
        let adjacent = self.degree[u] as i64 + self.degree[v] as i64 - 2;
        let with_cycle: i64 = stats.shared.values().map(|&(a, b)| (a as i64 + b as i64 - 1).abs()).sum();
        let without_cycle = adjacent - stats.shared.len() as i64;
        let opposite: i64 = stats.opposite.values().map(|&(a, b)| (a as i64 - b as i64).abs()).sum();
        2 + stats.cycles as i64 - (with_cycle + without_cycle) - opposite
    }

    /// Removes `e` and every cycle through it. Returns the positions of the
    /// other edges of the removed cycles.
    pub(crate) fn delete_in_place(&mut self, id: usize) -> Vec<usize> {
        debug_assert!(self.alive[id]);
        let mut touched = BTreeSet::new();
        for cid in std::mem::take(&mut self.edge_cycles[id]) {
            let Some(cycle) = self.cycles[cid as usize].take() else { continue };
            self.apply(&cycle, -1);
            for &f in &cycle.edges {
                if f as usize != id {
                    touched.insert(f as usize);
                    self.edge_cycles[f as usize].retain(|&c| c != cid);
                }
            }
        }
        self.alive[id] = false;
        let (u, v) = self.graph.dense_edges()[id];
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        touched.into_iter().collect()
    }

    /// Census of the graph without `e`, together with the edges whose cycle
    /// statistics changed.
    pub fn delete_edge(&self, e: Edge) -> Result<(CycleCensus, BTreeSet<Edge>)> {
        let id = self.edge_id(e)?;
        let mut next = self.clone();
        let touched = next.delete_in_place(id);
        let affected = touched.into_iter().map(|i| self.graph.edge_at(i)).collect();
        Ok((next, affected))
    }

    /// Canonical cycles as JSON, for fixtures and debugging.
    pub fn cycles_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.cycles().into_iter().map(|c| serde_json::json!(c.vertices())).collect())
    }
}

pub fn build_census(g: &Graph, max_len: usize) -> Result<CycleCensus> {
    CycleCensus::build(g, max_len)
}

pub fn delete_edge_from_census(census: &CycleCensus, e: Edge) -> Result<(CycleCensus, BTreeSet<Edge>)> {
    census.delete_edge(e)
}
