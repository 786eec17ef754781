//! Community detection by sequential edge deletion.
//!
//! Curvature is computed once for every edge. Then, while some edge lies on
//! the wrong side of the threshold, the most extreme such edge is deleted
//! (ties broken uniformly at random with a seeded generator) and curvature is
//! recomputed only for the edges the deletion can affect. Communities are the
//! connected components of what remains.
//!
//! Affected edges per method, for a deleted edge `(u, v)`:
//!
//! * FRC: edges incident to `u` or `v`.
//! * AFRC: the above plus every edge that shared a cycle with `(u, v)`.
//! * ORC: the above-incident edges, edges joining `N(u)` to `N(v)`, and for
//!   every `b` whose distance to `u` grows from 2 to 3 (its only common
//!   neighbour with `u` was `v`), the edges joining `N(u)` to `N(b)`; the
//!   same with `u` and `v` swapped. Ground distances between the two
//!   neighbourhoods of an edge never exceed 3, so these are the only
//!   distance changes an ORC value can see.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use ordered_float::OrderedFloat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{fit_two_gaussians, refine_two_gaussians, ThresholdFit};
use crate::curvature::{CurvatureVector, Method};
use crate::cycles::CycleCensus;
use crate::error::{Error, Result};
use crate::forman::frc_dense;
use crate::graph::{remove_sorted, Edge, Graph, Partition};
use crate::ollivier::orc_dense;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Delete the largest curvature until every edge is at most the threshold.
    Max,
    /// Delete the smallest curvature until every edge is at least the threshold.
    Min,
}

impl Direction {
    /// Between-community edges carry low ORC and AF3 but high AF4/AF5; plain
    /// FRC follows AF3.
    pub fn default_for(method: Method) -> Direction {
        match method {
            Method::Afrc4 | Method::Afrc5 => Direction::Max,
            Method::Frc | Method::Afrc3 | Method::Orc => Direction::Min,
        }
    }

    fn violates(self, value: f64, threshold: f64) -> bool {
        match self {
            Direction::Max => value > threshold,
            Direction::Min => value < threshold,
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "delete-max" => Ok(Direction::Max),
            "min" | "delete-min" => Ok(Direction::Min),
            other => Err(Error::InvalidParameter(format!("unknown deletion direction {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    Fixed(f64),
    /// Fit two Gaussians to the initial curvature once.
    Auto,
    /// Start as `Auto`, then re-run EM from the previous fit after every
    /// deletion and adopt each non-degenerate threshold. Forman-type
    /// curvatures depend on degrees, so their whole distribution drifts as
    /// edges go; a fixed threshold then stops early (delete-min) or strips
    /// low-degree vertices (delete-max).
    Tracking,
}

impl std::str::FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Threshold::Auto),
            "track" | "tracking" => Ok(Threshold::Tracking),
            t => match t.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Threshold::Fixed(x)),
                _ => {
                    Err(Error::InvalidParameter(format!("threshold must be a finite number, auto or track, got {t:?}")))
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectionConfig {
    pub method: Method,
    pub direction: Direction,
    pub threshold: Threshold,
    pub seed: u64,
    /// Defaults to the edge count.
    pub max_deletions: Option<usize>,
}

impl DetectionConfig {
    pub fn new(method: Method) -> Self {
        DetectionConfig {
            method,
            direction: Direction::default_for(method),
            threshold: Threshold::Auto,
            seed: 0,
            max_deletions: None,
        }
    }

    pub fn direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    pub fn threshold(mut self, threshold: Threshold) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn max_deletions(mut self, cap: usize) -> Self {
        self.max_deletions = Some(cap);
        self
    }
}

#[derive(Clone, Debug)]
pub struct DetectionResult {
    pub partition: Partition,
    pub deletions: Vec<Edge>,
    pub threshold_used: f64,
    pub threshold_fit: Option<ThresholdFit>,
    /// How many times a tracking threshold moved.
    pub threshold_updates: usize,
    pub iterations: usize,
    pub wall_time: Duration,
}

impl DetectionResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "partition": self.partition.labels().iter().map(|(v, l)| serde_json::json!([v, l])).collect::<Vec<_>>(),
            "communities": self.partition.community_count(),
            "deletions": self.deletions.iter().map(|e| serde_json::json!([e.0, e.1])).collect::<Vec<_>>(),
            "threshold_used": self.threshold_used,
            "threshold_fit": self.threshold_fit,
            "threshold_updates": self.threshold_updates,
            "iterations": self.iterations,
            "wall_time_secs": self.wall_time.as_secs_f64(),
        })
    }
}

/// Curvature of a shrinking graph, maintained incrementally.
pub struct DeletionProcess {
    method: Method,
    base: Graph,
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    live: usize,
    census: Option<CycleCensus>,
    values: Vec<f64>,
    order: BTreeSet<(OrderedFloat<f64>, usize)>,
}

impl DeletionProcess {
    pub fn new(g: &Graph, method: Method) -> Result<Self> {
        let census = match method.cycle_len() {
            Some(n) => Some(CycleCensus::build(g, n)?),
            None => None,
        };
        let mut process = DeletionProcess {
            method,
            base: g.clone(),
            adj: g.adjacency().to_vec(),
            alive: vec![true; g.edge_count()],
            live: g.edge_count(),
            census,
            values: vec![0.0; g.edge_count()],
            order: BTreeSet::new(),
        };
        let all: Vec<usize> = (0..g.edge_count()).collect();
        process.recompute(&all);
        Ok(process)
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn live_edge_count(&self) -> usize {
        self.live
    }

    /// Current values on the surviving edges.
    pub fn curvature(&self) -> CurvatureVector {
        let values =
            (0..self.alive.len()).filter(|&i| self.alive[i]).map(|i| (self.base.edge_at(i), self.values[i])).collect();
        CurvatureVector::new(self.method, values)
    }

    fn live_values(&self) -> Vec<f64> {
        (0..self.alive.len()).filter(|&i| self.alive[i]).map(|i| self.values[i]).collect()
    }

    pub fn residual_graph(&self) -> Graph {
        Graph::from_adjacency(self.base.vertices().to_vec(), self.adj.clone())
    }

    fn value_of(&self, id: usize) -> f64 {
        let (u, v) = self.base.dense_edges()[id];
        match self.method {
            Method::Frc => frc_dense(&self.adj, (u, v)) as f64,
            Method::Orc => orc_dense(&self.adj, u, v),
            _ => self.census.as_ref().expect("census for augmented curvature").afrc_by_id(id) as f64,
        }
    }

    fn recompute(&mut self, ids: &[usize]) {
        let fresh: Vec<f64> = if self.method == Method::Orc {
            ids.par_iter().map(|&i| self.value_of(i)).collect()
        } else {
            ids.iter().map(|&i| self.value_of(i)).collect()
        };
        for (&i, v) in ids.iter().zip(fresh) {
            self.order.remove(&(OrderedFloat(self.values[i]), i));
            self.values[i] = v;
            self.order.insert((OrderedFloat(v), i));
        }
    }

    fn live_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.base.dense_edge_index(a, b).filter(|&i| self.alive[i])
    }

    fn incident(&self, out: &mut BTreeSet<usize>, w: usize) {
        for &x in &self.adj[w] {
            out.insert(self.live_edge(w, x).expect("adjacency and edge flags agree"));
        }
    }

    /// Live edges with one endpoint in `left` and the other in `right`.
    fn joining(&self, out: &mut BTreeSet<usize>, left: &[usize], right: &[usize]) {
        for &x in left {
            for &y in right {
                if x != y && self.adj[x].binary_search(&y).is_ok() {
                    out.insert(self.live_edge(x, y).unwrap());
                }
            }
        }
    }

    fn orc_affected(&self, out: &mut BTreeSet<usize>, u: usize, v: usize) {
        self.joining(out, &self.adj[u], &self.adj[v]);
        for (a, c) in [(u, v), (v, u)] {
            for &b in &self.adj[c] {
                let far = b != a && self.adj[a].binary_search(&b).is_err() && !intersects(&self.adj[a], &self.adj[b]);
                if far {
                    self.joining(out, &self.adj[a], &self.adj[b]);
                }
            }
        }
    }

    /// Deletes a live edge and refreshes every affected value. Returns the
    /// edges whose curvature was recomputed.
    pub fn delete(&mut self, e: Edge) -> Result<Vec<Edge>> {
        let id = self.base.edge_index(e).filter(|&i| self.alive[i]).ok_or(Error::MissingEdge(e))?;
        Ok(self.delete_id(id).into_iter().map(|i| self.base.edge_at(i)).collect())
    }

    fn delete_id(&mut self, id: usize) -> Vec<usize> {
        let (u, v) = self.base.dense_edges()[id];
        self.alive[id] = false;
        self.live -= 1;
        self.order.remove(&(OrderedFloat(self.values[id]), id));
        remove_sorted(&mut self.adj[u], v);
        remove_sorted(&mut self.adj[v], u);

        let mut affected = BTreeSet::new();
        self.incident(&mut affected, u);
        self.incident(&mut affected, v);
        if let Some(census) = self.census.as_mut() {
            affected.extend(census.delete_in_place(id));
        }
        if self.method == Method::Orc {
            self.orc_affected(&mut affected, u, v);
        }
        let affected: Vec<usize> = affected.into_iter().collect();
        self.recompute(&affected);
        affected
    }

    /// The extreme value in `direction` and all edges attaining it, in
    /// canonical order.
    fn extremal(&self, direction: Direction) -> Option<(f64, Vec<usize>)> {
        let mut ties = Vec::new();
        let value = match direction {
            Direction::Min => {
                let &(best, _) = self.order.first()?;
                for &(v, i) in self.order.iter().take_while(|(v, _)| *v == best) {
                    debug_assert_eq!(v, best);
                    ties.push(i);
                }
                best.0
            }
            Direction::Max => {
                let &(best, _) = self.order.last()?;
                ties.extend(self.order.iter().rev().take_while(|(v, _)| *v == best).map(|&(_, i)| i));
                ties.reverse();
                best.0
            }
        };
        Some((value, ties))
    }
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
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

fn midrange(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo <= hi {
        (lo + hi) / 2.0
    } else {
        0.0
    }
}

pub fn detect_communities(g: &Graph, cfg: &DetectionConfig) -> Result<DetectionResult> {
    detect_communities_with(g, cfg, |_| {})
}

/// Runs the deletion loop, calling `observe` after every deletion.
pub fn detect_communities_with<F>(g: &Graph, cfg: &DetectionConfig, mut observe: F) -> Result<DetectionResult>
where
    F: FnMut(&DeletionProcess),
{
    let start = Instant::now();
    let mut process = DeletionProcess::new(g, cfg.method)?;
    let (mut threshold, fit) = match cfg.threshold {
        Threshold::Fixed(t) if t.is_finite() => (t, None),
        Threshold::Fixed(t) => return Err(Error::InvalidParameter(format!("threshold must be finite, got {t}"))),
        Threshold::Auto | Threshold::Tracking => match fit_two_gaussians(&process.values) {
            Ok(fit) => (fit.delta, Some(fit)),
            // nothing to separate: the middle of the range stops the loop at once
            Err(Error::InsufficientData(_)) => (midrange(&process.values), None),
            Err(e) => return Err(e),
        },
    };
    let cap = cfg.max_deletions.unwrap_or(usize::MAX).min(g.edge_count());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut deletions = Vec::new();
    let mut tracked = fit.clone().filter(|_| cfg.threshold == Threshold::Tracking);
    let mut threshold_updates = 0;
    while deletions.len() < cap {
        let Some((value, ties)) = process.extremal(cfg.direction) else { break };
        if !cfg.direction.violates(value, threshold) {
            break;
        }
        let pick = if ties.len() == 1 { ties[0] } else { ties[rng.random_range(0..ties.len())] };
        deletions.push(process.base.edge_at(pick));
        process.delete_id(pick);
        observe(&process);
        if let Some(previous) = &tracked {
            // too few distinct values left or a degenerate run: keep the last threshold
            if let Ok(f) = refine_two_gaussians(&process.live_values(), previous) {
                if f.converged {
                    threshold_updates += usize::from(f.delta != threshold);
                    threshold = f.delta;
                    tracked = Some(f);
                }
            }
        }
    }
    Ok(DetectionResult {
        partition: process.residual_graph().connected_components(),
        iterations: deletions.len(),
        deletions,
        threshold_used: threshold,
        threshold_fit: fit,
        threshold_updates,
        wall_time: start.elapsed(),
    })
}

/// Fraction of ground-truth communities whose vertex set coincides exactly
/// with one detected community.
pub fn accuracy(detected: &Partition, truth: &Partition) -> Result<f64> {
    if detected.labels().keys().ne(truth.labels().keys()) {
        return Err(Error::Mismatch("partitions cover different vertex sets".into()));
    }
    let detected_sizes: Vec<usize> = detected.communities().iter().map(Vec::len).collect();
    let truth_communities = truth.communities();
    if truth_communities.is_empty() {
        return Ok(1.0);
    }
    let matched = truth_communities
        .iter()
        .filter(|members| {
            let label = detected.label(members[0]).unwrap();
            detected_sizes[label] == members.len() && members.iter().all(|&v| detected.label(v) == Some(label))
        })
        .count();
    Ok(matched as f64 / truth_communities.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::compute;

    fn bridged_cliques() -> Graph {
        let mut edges = Vec::new();
        for base in [0u64, 5] {
            for a in 0..5 {
                for b in a + 1..5 {
                    edges.push((base + a, base + b));
                }
            }
        }
        edges.push((4, 5));
        Graph::from_edges(edges).unwrap()
    }

    #[test]
    fn bridge_goes_first() {
        let g = bridged_cliques();
        let cv = compute(&g, Method::Afrc3).unwrap();
        assert_eq!(cv.get(Edge(4, 5)), Some(-6.0));
        // interior clique edges join two degree-4 vertices, edges at the bridge end one of degree 5
        assert_eq!(cv.get(Edge(0, 1)), Some(5.0));
        assert_eq!(cv.get(Edge(0, 4)), Some(4.0));
        let cfg = DetectionConfig::new(Method::Afrc3).threshold(Threshold::Fixed(0.0));
        let result = detect_communities(&g, &cfg).unwrap();
        assert_eq!(result.deletions, vec![Edge(4, 5)]);
        let truth = Partition::from_labels((0..10).map(|v| (v, v / 5)));
        assert_eq!(result.partition, truth);
        assert_eq!(accuracy(&result.partition, &truth).unwrap(), 1.0);
    }

    #[test]
    fn satisfied_graph_needs_no_deletions() {
        let g = bridged_cliques();
        let cfg = DetectionConfig::new(Method::Frc).direction(Direction::Max).threshold(Threshold::Fixed(100.0));
        let result = detect_communities(&g, &cfg).unwrap();
        assert!(result.deletions.is_empty());
        assert_eq!(result.partition, g.connected_components());
    }

    #[test]
    fn deletion_cap_is_respected() {
        let g = bridged_cliques();
        let cfg = DetectionConfig::new(Method::Frc)
            .direction(Direction::Max)
            .threshold(Threshold::Fixed(-100.0))
            .max_deletions(3);
        assert_eq!(detect_communities(&g, &cfg).unwrap().iterations, 3);
        let cfg = cfg.max_deletions(0);
        assert_eq!(detect_communities(&g, &cfg).unwrap().iterations, 0);
        let cfg = DetectionConfig::new(Method::Frc).direction(Direction::Max).threshold(Threshold::Fixed(-100.0));
        assert_eq!(detect_communities(&g, &cfg).unwrap().iterations, g.edge_count());
    }

    #[test]
    fn non_finite_threshold_is_rejected() {
        let cfg = DetectionConfig::new(Method::Frc).threshold(Threshold::Fixed(f64::NAN));
        assert!(detect_communities(&bridged_cliques(), &cfg).is_err());
    }

    #[test]
    fn auto_threshold_without_spread() {
        // every edge of a cycle has the same curvature
        let c6 = Graph::from_edges((0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let r = detect_communities(&c6, &DetectionConfig::new(Method::Frc)).unwrap();
        assert!(r.deletions.is_empty() && r.threshold_fit.is_none());
        assert_eq!(r.threshold_used, 0.0);

        let cliques = Graph::from_edges(
            (0..10u64).flat_map(|a| (a + 1..10).filter(move |b| a / 5 == b / 5).map(move |b| (a, b))),
        )
        .unwrap();
        for method in Method::ALL {
            let r = detect_communities(&cliques, &DetectionConfig::new(method)).unwrap();
            assert_eq!(r.partition.community_count(), 2, "{method}");
        }
        let empty = Graph::from_parts([1, 2], []).unwrap();
        assert!(detect_communities(&empty, &DetectionConfig::new(Method::Orc)).unwrap().deletions.is_empty());
    }

    #[test]
    fn accuracy_cases() {
        let truth = Partition::from_labels((0..20u64).map(|v| (v, v / 2)));
        assert_eq!(accuracy(&truth, &truth).unwrap(), 1.0);
        let lump = Partition::from_labels((0..20u64).map(|v| (v, 0)));
        assert_eq!(accuracy(&lump, &truth).unwrap(), 0.0);
        // split the last community
        let split = Partition::from_labels((0..20u64).map(|v| (v, if v == 19 { 99 } else { v / 2 })));
        assert!((accuracy(&split, &truth).unwrap() - 0.9).abs() < 1e-12);
        let relabelled = Partition::from_labels((0..20u64).map(|v| (v, 100 - v / 2)));
        assert_eq!(accuracy(&relabelled, &truth).unwrap(), 1.0);
        let fewer = Partition::from_labels((0..10u64).map(|v| (v, 0)));
        assert!(accuracy(&fewer, &truth).is_err());
    }

    #[test]
    fn process_rejects_dead_edges() {
        let g = bridged_cliques();
        let mut p = DeletionProcess::new(&g, Method::Frc).unwrap();
        p.delete(Edge(4, 5)).unwrap();
        assert!(p.delete(Edge(4, 5)).is_err());
        assert_eq!(p.live_edge_count(), g.edge_count() - 1);
    }
}
