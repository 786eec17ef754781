//! Exact earth mover's distance between finitely supported measures.
//!
//! The transportation problem is solved as a min-cost flow with the
//! primal-dual method: shortest paths under reduced costs fix the dual
//! potentials, then a blocking max-flow saturates every zero-reduced-cost
//! path before the potentials move again. Ground costs between graph
//! neighbourhoods take only a handful of distinct values, so few phases are
//! needed. With integer masses and costs every intermediate quantity is an
//! exactly representable integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MASS_TOLERANCE: f64 = 1e-12;

/// Probability measure on a finite set of vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    support: Vec<u64>,
    mass: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(support: Vec<u64>, mass: Vec<f64>) -> Result<Self> {
        if support.len() != mass.len() {
            return Err(Error::InvalidMeasure(format!("{} support points but {} masses", support.len(), mass.len())));
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMeasure("support points must be distinct".into()));
        }
        if mass.iter().any(|&m| m < 0.0 || !m.is_finite()) {
            return Err(Error::InvalidMeasure("masses must be finite and non-negative".into()));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMeasure(format!("masses sum to {total}, not 1")));
        }
        Ok(DiscreteMeasure { support, mass })
    }

    pub fn uniform(support: Vec<u64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidMeasure("empty support".into()));
        }
        let w = 1.0 / support.len() as f64;
        let mass = vec![w; support.len()];
        // 1/d summed d times can miss 1 by a few ulps
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMeasure(format!("masses sum to {total}, not 1")));
        }
        Ok(DiscreteMeasure { support, mass })
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn mass_at(&self, v: u64) -> f64 {
        self.support.iter().position(|&w| w == v).map_or(0.0, |i| self.mass[i])
    }
}

/// Supply and demand measures with a ground cost between their supports,
/// `cost[i][j]` being the cost of moving unit mass from supply point `i` to
/// demand point `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportProblem {
    pub supply: DiscreteMeasure,
    pub demand: DiscreteMeasure,
    pub cost: Vec<Vec<f64>>,
}

impl TransportProblem {
    pub fn new(supply: DiscreteMeasure, demand: DiscreteMeasure, cost: Vec<Vec<f64>>) -> Result<Self> {
        if cost.len() != supply.support.len() || cost.iter().any(|row| row.len() != demand.support.len()) {
            return Err(Error::InvalidMeasure("cost matrix dimensions do not match the supports".into()));
        }
        if cost.iter().flatten().any(|&c| c < 0.0 || !c.is_finite()) {
            return Err(Error::InvalidMeasure("costs must be finite and non-negative".into()));
        }
        Ok(TransportProblem { supply, demand, cost })
    }
}

/// Optimal transport cost between the two measures of `p`.
pub fn wasserstein1(p: &TransportProblem) -> Result<f64> {
    let s: f64 = p.supply.mass.iter().sum();
    let d: f64 = p.demand.mass.iter().sum();
    if (s - d).abs() > 1e-9 {
        return Err(Error::MassMismatch { supply: s, demand: d });
    }
    let n = p.demand.mass.len();
    let flat: Vec<f64> = p.cost.iter().flatten().copied().collect();
    debug_assert_eq!(flat.len(), p.supply.mass.len() * n);
    Ok(min_cost_transport(&p.supply.mass, &p.demand.mass, &flat))
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: f64,
    cost: f64,
}

/// Minimum cost of shipping `supply` to `demand` with row-major unit costs
/// `cost[i * demand.len() + j]`. Totals are assumed equal; any excess on one
/// side is left unshipped.
pub fn min_cost_transport(supply: &[f64], demand: &[f64], cost: &[f64]) -> f64 {
    let (m, n) = (supply.len(), demand.len());
    assert_eq!(cost.len(), m * n, "cost matrix has the wrong size");
    let total: f64 = supply.iter().sum::<f64>().max(demand.iter().sum());
    if m == 0 || n == 0 || total == 0.0 {
        return 0.0;
    }
    let max_cost = cost.iter().fold(0.0f64, |a, &c| a.max(c));
    let eps_cap = total * 1e-14;
    let eps_cost = (1.0 + max_cost) * 1e-12;

    // 0 = source, 1..=m supply points, m+1..=m+n demand points, m+n+1 = sink
    let source = 0;
    let sink = m + n + 1;
    let nodes = m + n + 2;
    let mut arcs: Vec<Arc> = Vec::with_capacity(2 * (m * n + m + n));
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut add = |arcs: &mut Vec<Arc>, a: usize, b: usize, cap: f64, cost: f64| {
        out[a].push(arcs.len());
        arcs.push(Arc { to: b, cap, cost });
        out[b].push(arcs.len());
        arcs.push(Arc { to: a, cap: 0.0, cost: -cost });
    };
    for (i, &s) in supply.iter().enumerate() {
        add(&mut arcs, source, 1 + i, s, 0.0);
    }
    for i in 0..m {
        for j in 0..n {
            add(&mut arcs, 1 + i, 1 + m + j, total, cost[i * n + j]);
        }
    }
    for (j, &d) in demand.iter().enumerate() {
        add(&mut arcs, 1 + m + j, sink, d, 0.0);
    }

    let mut potential = vec![0.0f64; nodes];
    let mut dist = vec![f64::INFINITY; nodes];
    let mut done = vec![false; nodes];
    let mut level = vec![usize::MAX; nodes];
    let mut next_arc = vec![0usize; nodes];
    let mut queue = Vec::with_capacity(nodes);

    loop {
        // dense Dijkstra on reduced costs
        dist.fill(f64::INFINITY);
        done.fill(false);
        dist[source] = 0.0;
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for v in 0..nodes {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &a in &out[u] {
                let arc = arcs[a];
                if arc.cap <= eps_cap {
                    continue;
                }
                let reduced = (arc.cost + potential[u] - potential[arc.to]).max(0.0);
                let cand = dist[u] + reduced;
                if cand < dist[arc.to] {
                    dist[arc.to] = cand;
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        let cap_dist = dist[sink];
        for v in 0..nodes {
            potential[v] += dist[v].min(cap_dist);
        }

        // blocking flows on the zero-reduced-cost subgraph
        let admissible = |arc: &Arc, from: usize, potential: &[f64]| {
            arc.cap > eps_cap && (arc.cost + potential[from] - potential[arc.to]).abs() <= eps_cost
        };
        loop {
            level.fill(usize::MAX);
            level[source] = 0;
            queue.clear();
            queue.push(source);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &a in &out[u] {
                    let arc = arcs[a];
                    if level[arc.to] == usize::MAX && admissible(&arc, u, &potential) {
                        level[arc.to] = level[u] + 1;
                        queue.push(arc.to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                break;
            }
            next_arc.fill(0);
            loop {
                let pushed = augment(
                    &mut arcs,
                    &out,
                    &level,
                    &mut next_arc,
                    &potential,
                    source,
                    sink,
                    f64::INFINITY,
                    eps_cap,
                    eps_cost,
                );
                if pushed <= eps_cap {
                    break;
                }
            }
        }
    }

    let mut result = 0.0;
    for i in 0..m {
        for &a in &out[1 + i] {
            let arc = arcs[a];
            if (1 + m..1 + m + n).contains(&arc.to) {
                // flow on a forward arc is its reverse arc's capacity
                result += arcs[a ^ 1].cap * arc.cost;
            }
        }
    }
    result
}

#[allow(clippy::too_many_arguments)]
fn augment(
    arcs: &mut [Arc],
    out: &[Vec<usize>],
    level: &[usize],
    next_arc: &mut [usize],
    potential: &[f64],
    u: usize,
    sink: usize,
    limit: f64,
    eps_cap: f64,
    eps_cost: f64,
) -> f64 {
    if u == sink {
        return limit;
    }
    while next_arc[u] < out[u].len() {
        let a = out[u][next_arc[u]];
        let arc = arcs[a];
        if arc.cap > eps_cap
            && level[arc.to] == level[u] + 1
            && (arc.cost + potential[u] - potential[arc.to]).abs() <= eps_cost
        {
            let pushed =
                augment(arcs, out, level, next_arc, potential, arc.to, sink, limit.min(arc.cap), eps_cap, eps_cost);
            if pushed > eps_cap {
                arcs[a].cap -= pushed;
                arcs[a ^ 1].cap += pushed;
                return pushed;
            }
        }
        next_arc[u] += 1;
    }
    0.0
}
