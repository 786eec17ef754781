//! Simple undirected graphs with a canonical vertex and edge order.
//!
//! Vertices carry arbitrary non-negative integer identifiers. Internally they
//! are re-indexed densely in increasing identifier order, so dense index order
//! and identifier order coincide. Edges are stored as `(min, max)` pairs and
//! ordered lexicographically.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge in canonical `(smaller, larger)` form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub u64, pub u64);

impl Edge {
    pub fn new(a: u64, b: u64) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.0 == other.0 || self.0 == other.1 || self.1 == other.0 || self.1 == other.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    // edges[edge_offset[u]..edge_offset[u + 1]] are the edges whose smaller endpoint is u
    edge_offset: Vec<usize>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::from_dense(0, std::iter::empty())
    }
}

impl Graph {
    /// Builds a graph from explicit vertex identifiers and edges. Vertices
    /// mentioned only by edges are added; duplicate edges collapse.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = u64>,
        E: IntoIterator<Item = (u64, u64)>,
    {
        let mut ids: BTreeSet<u64> = vertices.into_iter().collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop { line: 0, vertex: a });
            }
            ids.insert(a);
            ids.insert(b);
            pairs.push(Edge::new(a, b));
        }
        let ids: Vec<u64> = ids.into_iter().collect();
        let index = |v: u64| ids.binary_search(&v).expect("vertex registered");
        let dense: Vec<(usize, usize)> = pairs.iter().map(|e| (index(e.0), index(e.1))).collect();
        let n = ids.len();
        let mut g = Graph::from_dense(n, dense);
        g.ids = ids;
        Ok(g)
    }

    pub fn from_edges<E: IntoIterator<Item = (u64, u64)>>(edges: E) -> Result<Self> {
        Graph::from_parts(std::iter::empty(), edges)
    }

    /// Graph on vertices `0..n` from dense index pairs. Panics on self-loops
    /// or out-of-range indices.
    pub fn from_dense<E: IntoIterator<Item = (usize, usize)>>(n: usize, edges: E) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a != b, "self-loop on vertex {a}");
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph::from_adjacency((0..n as u64).collect(), adj)
    }

    /// `adj` must be symmetric, sorted and free of self-loops.
    pub(crate) fn from_adjacency(ids: Vec<u64>, adj: Vec<Vec<usize>>) -> Self {
        let mut edges = Vec::new();
        let mut edge_offset = Vec::with_capacity(adj.len() + 1);
        for (u, list) in adj.iter().enumerate() {
            edge_offset.push(edges.len());
            edges.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        edge_offset.push(edges.len());
        Graph { ids, adj, edges, edge_offset }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex identifiers in increasing order.
    pub fn vertices(&self) -> &[u64] {
        &self.ids
    }

    /// Edges in canonical lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().map(|&(u, v)| Edge(self.ids[u], self.ids[v]))
    }

    pub fn contains_vertex(&self, v: u64) -> bool {
        self.index_of(v).is_some()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn degree(&self, v: u64) -> Option<usize> {
        self.index_of(v).map(|i| self.adj[i].len())
    }

    pub fn neighbors(&self, v: u64) -> Option<impl Iterator<Item = u64> + '_> {
        self.index_of(v).map(|i| self.adj[i].iter().map(move |&w| self.ids[w]))
    }

    pub fn index_of(&self, v: u64) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn id_of(&self, i: usize) -> u64 {
        self.ids[i]
    }

    /// Sorted dense adjacency lists.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Dense edge endpoints, indexed by edge position.
    pub fn dense_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_at(&self, i: usize) -> Edge {
        let (u, v) = self.edges[i];
        Edge(self.ids[u], self.ids[v])
    }

    /// Position of `e` in the canonical edge order.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        let u = self.index_of(e.0)?;
        let v = self.index_of(e.1)?;
        self.dense_edge_index(u, v)
    }

    pub fn dense_edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let lo = self.edge_offset[u];
        let hi = self.edge_offset[u + 1];
        self.edges[lo..hi].binary_search_by(|&(_, w)| w.cmp(&v)).ok().map(|k| lo + k)
    }

    /// Copy of the graph without `e`. The vertex set is unchanged.
    pub fn remove_edge(&self, e: Edge) -> Result<Graph> {
        if !self.has_edge(e) {
            return Err(Error::MissingEdge(e));
        }
        let u = self.index_of(e.0).unwrap();
        let v = self.index_of(e.1).unwrap();
        let mut adj = self.adj.clone();
        remove_sorted(&mut adj[u], v);
        remove_sorted(&mut adj[v], u);
        Ok(Graph::from_adjacency(self.ids.clone(), adj))
    }

    /// Applies an injective relabeling of the vertex identifiers.
    ///
    /// Panics if `f` sends the two endpoints of an edge to the same id.
    pub fn relabel<F: Fn(u64) -> u64>(&self, f: F) -> Graph {
        Graph::from_parts(self.ids.iter().map(|&v| f(v)), self.edges().map(|e| (f(e.0), f(e.1))))
            .expect("relabeling must be injective")
    }

    pub fn connected_components(&self) -> Partition {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        // dense order is id order, so components are discovered by smallest member
        for s in 0..self.vertex_count() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        Partition { labels: self.ids.iter().copied().zip(label).collect(), count: next }
    }

    /// Hop distances from each source to every vertex within `radius`.
    /// Unreachable or too-distant pairs are omitted.
    pub fn bfs_distances(&self, sources: &[u64], radius: usize) -> Result<BTreeMap<(u64, u64), usize>> {
        let mut out = BTreeMap::new();
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut seen = Vec::new();
        for &s in sources {
            let si = self.index_of(s).ok_or(Error::MissingVertex(s))?;
            for &i in &seen {
                dist[i] = usize::MAX;
            }
            seen.clear();
            dist[si] = 0;
            seen.push(si);
            let mut queue = VecDeque::from([si]);
            while let Some(u) = queue.pop_front() {
                out.insert((s, self.ids[u]), dist[u]);
                if dist[u] == radius {
                    continue;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        seen.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn remove_sorted(list: &mut Vec<usize>, x: usize) {
    if let Ok(k) = list.binary_search(&x) {
        list.remove(k);
    }
}

/// Assignment of vertices to communities labelled `0..k`, numbered by the
/// order of each community's smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    labels: BTreeMap<u64, usize>,
    count: usize,
}

impl Partition {
    /// Normalizes arbitrary labels to contiguous ones. Vertices are visited in
    /// increasing order, so a label is numbered at its smallest member.
    pub fn from_labels<L: Ord>(labels: impl IntoIterator<Item = (u64, L)>) -> Self {
        let raw: BTreeMap<u64, L> = labels.into_iter().collect();
        let mut remap: BTreeMap<L, usize> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (v, l) in raw {
            let next = remap.len();
            let id = *remap.entry(l).or_insert(next);
            out.insert(v, id);
        }
        Partition { count: remap.len(), labels: out }
    }

    pub fn label(&self, v: u64) -> Option<usize> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<u64, usize> {
        &self.labels
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn communities(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.count];
        for (&v, &l) in &self.labels {
            out[l].push(v);
        }
        out
    }

    /// Whether both endpoints of `e` carry the same label.
    pub fn is_within(&self, e: Edge) -> Option<bool> {
        Some(self.label(e.0)? == self.label(e.1)?)
    }

    pub fn covers(&self, g: &Graph) -> bool {
        self.labels.len() == g.vertex_count() && g.vertices().iter().all(|v| self.labels.contains_key(v))
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match fields.as_slice() {
            [v] => vertices.push(parse(v)?),
            [a, b] => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a == b {
                    return Err(Error::SelfLoop { line: line_no, vertex: a });
                }
                edges.push((a, b));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected one or two fields, found {}", fields.len()),
                })
            }
        }
    }
    Graph::from_parts(vertices, edges)
}

/// Canonical edge list: edges in lexicographic order, then isolated vertices.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    for (i, &v) in g.vertices().iter().enumerate() {
        if g.adjacency()[i].is_empty() {
            out.push_str(&format!("{v}\n"));
        }
    }
    out
}

/// Parses `vertex label` lines. Labels may be any token; they are renumbered
/// by the order of each community's smallest vertex.
pub fn parse_labels(text: &str) -> Result<Partition> {
    let mut labels = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [v, l] = fields.as_slice() else {
            return Err(Error::Parse {
                line: k + 1,
                message: format!("expected `vertex label`, found {} fields", fields.len()),
            });
        };
        let v: u64 = v.parse().map_err(|_| Error::Parse {
            line: k + 1,
            message: format!("expected a non-negative integer vertex, found {v:?}"),
        })?;
        if !seen.insert(v) {
            return Err(Error::Parse { line: k + 1, message: format!("vertex {v} labelled twice") });
        }
        labels.push((v, l.to_string()));
    }
    Ok(Partition::from_labels(labels))
}

pub fn write_labels(p: &Partition) -> String {
    p.labels().iter().map(|(v, l)| format!("{v} {l}\n")).collect()
}
