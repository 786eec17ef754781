//! Slow, independent reference implementations used as test oracles.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use graph_curvature::{Edge, Graph};
use rand::Rng;

/// A random simple graph on at most `max_vertices` vertices with at most
/// `max_edges` edges. Vertex ids are spread out so dense and sparse ids differ.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.random_range(2..=max_vertices);
    let ids: Vec<u64> = {
        let mut pool: Vec<u64> = (0..(3 * n as u64)).collect();
        let mut picked = Vec::new();
        for _ in 0..n {
            let i = rng.random_range(0..pool.len());
            picked.push(pool.swap_remove(i));
        }
        picked
    };
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((ids[a], ids[b]));
        }
    }
    let target = rng.random_range(0..=max_edges.min(pairs.len()));
    let mut edges = Vec::new();
    for _ in 0..target {
        let i = rng.random_range(0..pairs.len());
        edges.push(pairs.swap_remove(i));
    }
    Graph::from_parts(ids, edges).unwrap()
}

/// Random bipartite graph with sides of `a` and `b` vertices.
pub fn random_bipartite<R: Rng>(rng: &mut R, a: u64, b: u64, p: f64) -> Graph {
    let mut edges = Vec::new();
    for x in 0..a {
        for y in 0..b {
            if rng.random::<f64>() < p {
                edges.push((x, a + y));
            }
        }
    }
    Graph::from_parts(0..a + b, edges).unwrap()
}

/// Uniform random labelled tree via random attachment.
pub fn random_tree<R: Rng>(rng: &mut R, n: u64) -> Graph {
    let edges: Vec<(u64, u64)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Graph::from_parts(0..n, edges).unwrap()
}

fn adjacent(g: &Graph, a: u64, b: u64) -> bool {
    g.has_edge(Edge::new(a, b))
}

/// Every simple cycle of length `3..=max_len`, found by extending all
/// ordered vertex tuples. Each cycle is returned once, as one traversal.
pub fn brute_cycles(g: &Graph, max_len: usize) -> Vec<Vec<u64>> {
    let mut seen: BTreeSet<BTreeSet<Edge>> = BTreeSet::new();
    let mut out = Vec::new();
    let vertices = g.vertices().to_vec();
    let mut path = Vec::new();
    fn extend(
        g: &Graph,
        vertices: &[u64],
        path: &mut Vec<u64>,
        max_len: usize,
        seen: &mut BTreeSet<BTreeSet<Edge>>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if path.len() >= 3 && adjacent(g, path[path.len() - 1], path[0]) {
            let mut edges = BTreeSet::new();
            for i in 0..path.len() {
                edges.insert(Edge::new(path[i], path[(i + 1) % path.len()]));
            }
            if seen.insert(edges) {
                out.push(path.clone());
            }
        }
        if path.len() == max_len {
            return;
        }
        for &v in vertices {
            if !path.contains(&v) && adjacent(g, path[path.len() - 1], v) {
                path.push(v);
                extend(g, vertices, path, max_len, seen, out);
                path.pop();
            }
        }
    }
    for &v in &vertices {
        path.push(v);
        extend(g, &vertices, &mut path, max_len, &mut seen, &mut out);
        path.pop();
    }
    out
}

/// The count matrix, straight from its definition: diagonal entries count
/// cycles through an edge; `Γ(e, f)` counts cycles where the two edges are
/// aligned when `e < f` and not aligned when `e > f`.
pub fn gamma_matrix(g: &Graph, max_len: usize) -> BTreeMap<(Edge, Edge), u32> {
    let mut gamma = BTreeMap::new();
    for cycle in brute_cycles(g, max_len) {
        let l = cycle.len();
        // (edge, traversed small to large)
        let steps: Vec<(Edge, bool)> =
            (0..l).map(|i| (Edge::new(cycle[i], cycle[(i + 1) % l]), cycle[i] < cycle[(i + 1) % l])).collect();
        for &(e, de) in &steps {
            *gamma.entry((e, e)).or_insert(0) += 1;
            for &(f, df) in &steps {
                if e == f {
                    continue;
                }
                let aligned = de == df;
                let counts = if e < f { aligned } else { !aligned };
                if counts {
                    *gamma.entry((e, f)).or_insert(0) += 1;
                }
            }
        }
    }
    gamma
}

/// Augmented Forman curvature from the 2-complex formula with the full
/// count matrix, summing over every other edge of the graph.
pub fn afrc_oracle(g: &Graph, gamma: &BTreeMap<(Edge, Edge), u32>, e: Edge) -> i64 {
    let at = |a: Edge, b: Edge| *gamma.get(&(a, b)).unwrap_or(&0) as i64;
    let mut value = 2 + at(e, e);
    for f in g.edges() {
        if f == e {
            continue;
        }
        if e.shares_vertex(&f) {
            value -= (at(e, f) + at(f, e) - 1).abs();
        } else {
            value -= (at(e, f) - at(f, e)).abs();
        }
    }
    value
}

pub fn triangles_through(g: &Graph, e: Edge) -> usize {
    g.vertices().iter().filter(|&&w| w != e.0 && w != e.1 && adjacent(g, e.0, w) && adjacent(g, e.1, w)).count()
}

/// Minimum transport cost by enumerating basic feasible solutions: every
/// spanning tree of the complete bipartite support graph, solved by peeling
/// leaves, keeping the feasible ones.
pub fn transport_brute(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(k);
    fn subsets(
        start: usize,
        k: usize,
        cells: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if chosen.len() == k {
            visit(chosen);
            return;
        }
        for i in start..cells.len() {
            if cells.len() - i < k - chosen.len() {
                break;
            }
            chosen.push(cells[i]);
            subsets(i + 1, k, cells, chosen, visit);
            chosen.pop();
        }
    }
    let mut visit = |tree: &[(usize, usize)]| {
        // spanning tree check by union-find over m + n nodes
        let mut parent: Vec<usize> = (0..m + n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(i, j) in tree {
            let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
            if a == b {
                return;
            }
            parent[a] = b;
        }
        let mut rows = supply.to_vec();
        let mut cols = demand.to_vec();
        let mut remaining: Vec<(usize, usize)> = tree.to_vec();
        let mut total = 0.0;
        while !remaining.is_empty() {
            let row_leaf = (0..m).find(|&i| remaining.iter().filter(|c| c.0 == i).count() == 1);
            let (idx, flow) = if let Some(i) = row_leaf {
                let idx = remaining.iter().position(|c| c.0 == i).unwrap();
                (idx, rows[i])
            } else {
                let j = (0..n).find(|&j| remaining.iter().filter(|c| c.1 == j).count() == 1).unwrap();
                let idx = remaining.iter().position(|c| c.1 == j).unwrap();
                (idx, cols[j])
            };
            let (i, j) = remaining.swap_remove(idx);
            if flow < -1e-12 {
                return;
            }
            rows[i] -= flow;
            cols[j] -= flow;
            total += flow * cost[i][j];
        }
        if rows.iter().chain(&cols).all(|r| r.abs() < 1e-9) && total < best {
            best = total;
        }
    };
    subsets(0, k, &cells, &mut chosen, &mut visit);
    best
}

/// Connected components as a set of vertex sets, from the transitive closure.
pub fn components_oracle(g: &Graph) -> BTreeSet<BTreeSet<u64>> {
    let v = g.vertices();
    let n = v.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        for j in 0..n {
            if g.has_edge(Edge::new(v[i], v[j])) && i != j {
                reach[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).map(|i| (0..n).filter(|&j| reach[i][j]).map(|j| v[j]).collect()).collect()
}

/// Hop distances from `source` by Dijkstra with unit weights.
pub fn dijkstra(g: &Graph, source: u64) -> BTreeMap<u64, usize> {
    let mut dist = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0usize, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist.contains_key(&v) {
            continue;
        }
        dist.insert(v, d);
        for w in g.neighbors(v).unwrap() {
            if !dist.contains_key(&w) {
                heap.push(Reverse((d + 1, w)));
            }
        }
    }
    dist
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
