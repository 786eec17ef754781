//! Seeded random graph models.
//!
//! Every model draws from a ChaCha8 generator seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`. Stream 0 supplies one uniform
//! `f64` in `[0, 1)` per candidate vertex pair, visited in lexicographic
//! order; a pair becomes an edge when its draw is below the pair's
//! probability. Pairs a model can never connect consume no draw. Stream 1
//! supplies the Prüfer sequences of the tree-SBM communities, community by
//! community. Vertices are numbered `0..N` and communities occupy
//! contiguous blocks.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams {
    Er { n: usize, p: f64, seed: u64 },
    Bg { n: usize, p: f64, seed: u64 },
    Sbm { l: usize, k: usize, p: f64, q: f64, seed: u64 },
    Tsbm { l: usize, k: usize, p: f64, q: f64, seed: u64 },
    Hbg { n: usize, p: f64, q: f64, seed: u64 },
}

impl ModelParams {
    /// Samples the model. Models with planted communities also return the
    /// ground-truth partition.
    pub fn generate(&self) -> Result<(Graph, Option<Partition>)> {
        match *self {
            ModelParams::Er { n, p, seed } => Ok((erdos_renyi(n, p, seed)?, None)),
            ModelParams::Bg { n, p, seed } => Ok((bipartite_er(n, p, seed)?, None)),
            ModelParams::Sbm { l, k, p, q, seed } => sbm(l, k, p, q, seed).map(|(g, t)| (g, Some(t))),
            ModelParams::Tsbm { l, k, p, q, seed } => tree_sbm(l, k, p, q, seed).map(|(g, t)| (g, Some(t))),
            ModelParams::Hbg { n, p, q, seed } => hbg(n, p, q, seed).map(|(g, t)| (g, Some(t))),
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in [0, 1], got {p}")))
    }
}

fn check_size(name: &str, n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be at least 1")))
    }
}

fn check_order(p: f64, q: f64) -> Result<()> {
    if q <= p {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("between-community probability q={q} exceeds p={p}")))
    }
}

fn coin_stream(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

/// Samples every pair `a < b` of `0..n` with the probability returned by
/// `prob`, skipping pairs with `None`.
fn sample_pairs<F: Fn(usize, usize) -> Option<f64>>(n: usize, seed: u64, prob: F) -> Vec<(usize, usize)> {
    let mut rng = coin_stream(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(p) = prob(a, b) {
                if rng.random::<f64>() < p {
                    edges.push((a, b));
                }
            }
        }
    }
    edges
}

fn block_partition(n: usize, block: usize) -> Partition {
    Partition::from_labels((0..n).map(|v| (v as u64, v / block)))
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_size("n", n)?;
    check_probability("p", p)?;
    Ok(Graph::from_dense(n, sample_pairs(n, seed, |_, _| Some(p))))
}

/// Vertices `0..n` on one side, `n..2n` on the other.
pub fn bipartite_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_size("n", n)?;
    check_probability("p", p)?;
    let edges = sample_pairs(2 * n, seed, |a, b| ((a < n) != (b < n)).then_some(p));
    Ok(Graph::from_dense(2 * n, edges))
}

/// `l` communities of `k` vertices; community `c` is `c·k..(c+1)·k`.
pub fn sbm(l: usize, k: usize, p: f64, q: f64, seed: u64) -> Result<(Graph, Partition)> {
    check_size("l", l)?;
    check_size("k", k)?;
    check_probability("p", p)?;
    check_probability("q", q)?;
    check_order(p, q)?;
    let n = l * k;
    let edges = sample_pairs(n, seed, |a, b| Some(if a / k == b / k { p } else { q }));
    Ok((Graph::from_dense(n, edges), block_partition(n, k)))
}

/// Decodes a Prüfer sequence over `0..k` into the edges of a labelled tree.
pub fn prufer_tree(k: usize, sequence: &[usize]) -> Vec<(usize, usize)> {
    if k < 2 {
        return Vec::new();
    }
    assert_eq!(sequence.len(), k - 2, "Prüfer sequence must have k - 2 entries");
    let mut degree = vec![1usize; k];
    for &s in sequence {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..k).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(k - 1);
    for &s in sequence {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Communities are uniformly random labelled trees on `k` vertices; the
/// remaining within-community pairs appear with probability `p`, pairs in
/// different communities with probability `q`.
pub fn tree_sbm(l: usize, k: usize, p: f64, q: f64, seed: u64) -> Result<(Graph, Partition)> {
    check_size("l", l)?;
    check_size("k", k)?;
    check_probability("p", p)?;
    check_probability("q", q)?;
    let n = l * k;
    let mut tree_rng = ChaCha8Rng::seed_from_u64(seed);
    tree_rng.set_stream(1);
    let mut tree_edges = BTreeSet::new();
    for c in 0..l {
        let sequence: Vec<usize> = (0..k.saturating_sub(2)).map(|_| tree_rng.random_range(0..k)).collect();
        for (a, b) in prufer_tree(k, &sequence) {
            tree_edges.insert((c * k + a, c * k + b));
        }
    }
    let mut edges = sample_pairs(n, seed, |a, b| {
        if a / k != b / k {
            Some(q)
        } else if tree_edges.contains(&(a, b)) {
            None
        } else {
            Some(p)
        }
    });
    edges.extend(tree_edges.iter().copied());
    Ok((Graph::from_dense(n, edges), block_partition(n, k)))
}

/// Hierarchical bipartite graph on `4n` vertices. Community `c` is
/// `2cn..2(c+1)n`; within a community the first `n` vertices sit on side A
/// and the last `n` on side B. Only pairs across the bipartition are
/// sampled: with probability `p` inside a community, `q` across.
pub fn hbg(n: usize, p: f64, q: f64, seed: u64) -> Result<(Graph, Partition)> {
    check_size("n", n)?;
    check_probability("p", p)?;
    check_probability("q", q)?;
    check_order(p, q)?;
    let total = 4 * n;
    let side = |v: usize| (v % (2 * n)) < n;
    let community = |v: usize| v / (2 * n);
    let edges = sample_pairs(total, seed, |a, b| {
        (side(a) != side(b)).then_some(if community(a) == community(b) { p } else { q })
    });
    Ok((Graph::from_dense(total, edges), block_partition(total, 2 * n)))
}

/// Which side of the global bipartition an HBG vertex belongs to.
pub fn hbg_side(n: usize, v: u64) -> bool {
    (v as usize % (2 * n)) < n
}
