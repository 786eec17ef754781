//! Summary statistics over curvature vectors: the within/between curvature
//! gap of a partition, Pearson correlation between two curvatures,
//! histograms, and the two-Gaussian decision threshold used to stop
//! edge deletion.

use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureVector, Method};
use crate::error::{Error, Result};
use crate::graph::Partition;

/// Population mean and standard deviation.
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub kappa_within: f64,
    pub kappa_between: f64,
    pub sigma_within: f64,
    pub sigma_between: f64,
    pub pooled_sigma: f64,
    pub gap: f64,
    pub within_edges: usize,
    pub between_edges: usize,
}

/// Number of pooled standard deviations separating the mean curvature of
/// within-community edges from that of between-community edges.
pub fn curvature_gap(cv: &CurvatureVector, truth: &Partition) -> Result<GapReport> {
    let (within, between) = cv.split(truth)?;
    gap_from_values(&within, &between)
}

pub fn gap_from_values(within: &[f64], between: &[f64]) -> Result<GapReport> {
    let w = (!within.is_empty()).then(|| mean_std(within));
    let b = (!between.is_empty()).then(|| mean_std(between));
    let (Some((kw, sw)), Some((kb, sb))) = (w, b) else {
        return Err(Error::DegenerateGap {
            reason: if within.is_empty() { "no within-community edges" } else { "no between-community edges" },
            kappa_within: w.map(|x| x.0),
            kappa_between: b.map(|x| x.0),
        });
    };
    let pooled = ((sw * sw + sb * sb) / 2.0).sqrt();
    if pooled == 0.0 {
        return Err(Error::DegenerateGap {
            reason: "zero pooled standard deviation",
            kappa_within: Some(kw),
            kappa_between: Some(kb),
        });
    }
    Ok(GapReport {
        kappa_within: kw,
        kappa_between: kb,
        sigma_within: sw,
        sigma_between: sb,
        pooled_sigma: pooled,
        gap: (kw - kb).abs() / pooled,
        within_edges: within.len(),
        between_edges: between.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub method_a: Method,
    pub method_b: Method,
    pub pearson: f64,
    pub edges: usize,
}

/// Pearson correlation of two curvature vectors, paired by edge.
pub fn pearson(a: &CurvatureVector, b: &CurvatureVector) -> Result<f64> {
    if a.len() != b.len() || a.values.keys().zip(b.values.keys()).any(|(x, y)| x != y) {
        return Err(Error::Mismatch("curvature vectors cover different edges".into()));
    }
    pearson_values(&a.to_vec(), &b.to_vec())
}

pub fn correlate(a: &CurvatureVector, b: &CurvatureVector) -> Result<CorrelationReport> {
    Ok(CorrelationReport { method_a: a.method, method_b: b.method, pearson: pearson(a, b)?, edges: a.len() })
}

pub fn pearson_values(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Mismatch("samples have different lengths".into()));
    }
    if x.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two samples"));
    }
    let (mx, _) = mean_std(x);
    let (my, _) = mean_std(y);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance"));
    }
    // sqrt(s * s) == s exactly in binary floating point, so identical inputs give exactly 1
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Equal-width bins over `[min, max]`; returns `(lower edge, count)` pairs.
/// The last bin is closed on the right.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<(f64, usize)>> {
    let layout = BinLayout::spanning(values, bins)?;
    let mut counts = vec![0usize; bins];
    for &v in values {
        counts[layout.bin(v)] += 1;
    }
    Ok(layout.edges().zip(counts).collect())
}

/// Bins shared between several samples, so their histograms line up.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinLayout {
    pub lower: f64,
    pub width: f64,
    pub bins: usize,
}

impl BinLayout {
    pub fn spanning(values: &[f64], bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
        }
        if values.is_empty() {
            return Err(Error::InsufficientData("histogram of an empty sample".into()));
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 / bins as f64 };
        Ok(BinLayout { lower: lo, width, bins })
    }

    pub fn bin(&self, v: f64) -> usize {
        let k = ((v - self.lower) / self.width).floor();
        (k.max(0.0) as usize).min(self.bins - 1)
    }

    pub fn edges(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.bins).map(move |k| self.lower + k as f64 * self.width)
    }

    pub fn count(&self, values: &[f64]) -> Vec<usize> {
        let mut counts = vec![0; self.bins];
        for &v in values {
            counts[self.bin(v)] += 1;
        }
        counts
    }
}

pub const EM_MAX_ITERATIONS: usize = 200;
pub const EM_TOLERANCE: f64 = 1e-8;
const SIGMA_FLOOR_FRACTION: f64 = 1e-6;
const MIN_WEIGHT: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub mu1: f64,
    pub sigma1: f64,
    pub weight1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub weight2: f64,
    pub delta: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Mixture log-likelihood after initialization and after every EM step.
    pub log_likelihood: Vec<f64>,
    /// Centres of the optimal two-cluster split used to initialize EM.
    pub kmeans_centers: (f64, f64),
}

/// Minimum-error boundary between two Gaussians, weighting each mean by the
/// other component's standard deviation.
pub fn decision_threshold(mu1: f64, sigma1: f64, mu2: f64, sigma2: f64) -> f64 {
    (sigma2 * mu1 + sigma1 * mu2) / (sigma1 + sigma2)
}

/// Optimal 1-D two-means split of sorted values: returns the split index
/// `k` so that `sorted[..k]` and `sorted[k..]` are the clusters. Only splits
/// between distinct values are considered.
fn two_means_split(sorted: &[f64]) -> usize {
    let n = sorted.len();
    let mut prefix = vec![0.0; n + 1];
    let mut prefix_sq = vec![0.0; n + 1];
    for (i, &v) in sorted.iter().enumerate() {
        prefix[i + 1] = prefix[i] + v;
        prefix_sq[i + 1] = prefix_sq[i] + v * v;
    }
    let sse = |a: usize, b: usize| {
        let m = (b - a) as f64;
        let s = prefix[b] - prefix[a];
        (prefix_sq[b] - prefix_sq[a]) - s * s / m
    };
    (1..n)
        .filter(|&k| sorted[k - 1] < sorted[k])
        .min_by(|&a, &b| (sse(0, a) + sse(a, n)).total_cmp(&(sse(0, b) + sse(b, n))))
        .expect("at least two distinct values")
}

fn log_normal_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    -0.5 * z * z - sigma.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

#[derive(Clone, Copy, Debug)]
struct Mixture {
    mu: [f64; 2],
    sigma: [f64; 2],
    weight: [f64; 2],
}

impl Mixture {
    fn log_likelihood(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .map(|&x| {
                log_add_exp(
                    self.weight[0].ln() + log_normal_pdf(x, self.mu[0], self.sigma[0]),
                    self.weight[1].ln() + log_normal_pdf(x, self.mu[1], self.sigma[1]),
                )
            })
            .sum()
    }

    fn ordered(mut self) -> Self {
        if self.mu[0] > self.mu[1] {
            self.mu.swap(0, 1);
            self.sigma.swap(0, 1);
            self.weight.swap(0, 1);
        }
        self
    }
}

struct EmRun {
    mixture: Mixture,
    converged: bool,
    degenerate: bool,
    iterations: usize,
    trace: Vec<f64>,
}

/// EM from `start`. Stops early, flagging the run as degenerate, if a
/// component's weight falls below 1% or its standard deviation below `floor`.
fn run_em(values: &[f64], start: Mixture, floor: f64) -> EmRun {
    let n = values.len() as f64;
    let mut current = start;
    let mut trace = vec![current.log_likelihood(values)];
    let mut converged = false;
    let mut degenerate = false;
    let mut iterations = 0;
    let mut resp = vec![0.0; values.len()];
    while iterations < EM_MAX_ITERATIONS {
        iterations += 1;
        // E step: responsibility of component 0
        for (r, &x) in resp.iter_mut().zip(values) {
            let a = current.weight[0].ln() + log_normal_pdf(x, current.mu[0], current.sigma[0]);
            let b = current.weight[1].ln() + log_normal_pdf(x, current.mu[1], current.sigma[1]);
            *r = (a - log_add_exp(a, b)).exp();
        }
        // M step
        let mut next = Mixture { mu: [0.0; 2], sigma: [0.0; 2], weight: [0.0; 2] };
        for c in 0..2 {
            let r = |i: usize| if c == 0 { resp[i] } else { 1.0 - resp[i] };
            let nk: f64 = (0..values.len()).map(r).sum();
            next.weight[c] = nk / n;
            if nk <= 0.0 {
                degenerate = true;
                break;
            }
            next.mu[c] = (0..values.len()).map(|i| r(i) * values[i]).sum::<f64>() / nk;
            let var = (0..values.len()).map(|i| r(i) * (values[i] - next.mu[c]).powi(2)).sum::<f64>() / nk;
            next.sigma[c] = var.sqrt();
        }
        if degenerate
            || next.weight.iter().any(|&w| w < MIN_WEIGHT)
            || next.sigma.iter().any(|&s| s < floor || s == 0.0)
        {
            degenerate = true;
            break;
        }
        current = next;
        let ll = current.log_likelihood(values);
        let prev = *trace.last().unwrap();
        trace.push(ll);
        if (ll - prev).abs() <= EM_TOLERANCE * (1.0 + prev.abs()) {
            converged = true;
            break;
        }
    }
    EmRun { mixture: current, converged, degenerate, iterations, trace }
}

/// Sorted copy of `values` and the standard deviation floor, after checking
/// there is enough spread to fit two components.
fn prepare(values: &[f64]) -> Result<(Vec<f64>, f64)> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InsufficientData("non-finite curvature value".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct = sorted.clone();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 distinct values to fit two Gaussians, got {}",
            distinct.len()
        )));
    }
    let floor = SIGMA_FLOOR_FRACTION * (sorted[sorted.len() - 1] - sorted[0]);
    Ok((sorted, floor))
}

fn fit_from_run(run: EmRun, fallback: Mixture, fallback_delta: f64, centers: (f64, f64)) -> ThresholdFit {
    let (m, delta) = if run.degenerate {
        (fallback.ordered(), fallback_delta)
    } else {
        let m = run.mixture.ordered();
        (m, decision_threshold(m.mu[0], m.sigma[0], m.mu[1], m.sigma[1]))
    };
    ThresholdFit {
        mu1: m.mu[0],
        sigma1: m.sigma[0],
        weight1: m.weight[0],
        mu2: m.mu[1],
        sigma2: m.sigma[1],
        weight2: m.weight[1],
        delta,
        converged: run.converged && !run.degenerate,
        iterations: run.iterations,
        log_likelihood: run.trace,
        kmeans_centers: centers,
    }
}

/// Fits a two-component Gaussian mixture by EM and returns the decision
/// threshold between the components.
///
/// EM starts from the optimal two-cluster split of the sorted values and is
/// fully deterministic. It runs at most [`EM_MAX_ITERATIONS`] steps and stops
/// once the log-likelihood improves by less than [`EM_TOLERANCE`] (relative).
/// If a component's weight drops below 1% or its standard deviation below
/// `1e-6·(max - min)`, the fit is reported as not converged and the threshold
/// falls back to the midpoint of the two cluster centres.
pub fn fit_two_gaussians(values: &[f64]) -> Result<ThresholdFit> {
    let (sorted, floor) = prepare(values)?;
    let n = sorted.len() as f64;
    let split = two_means_split(&sorted);
    let (c1, s1) = mean_std(&sorted[..split]);
    let (c2, s2) = mean_std(&sorted[split..]);
    let start = Mixture {
        mu: [c1, c2],
        sigma: [s1.max(floor), s2.max(floor)],
        weight: [split as f64 / n, 1.0 - split as f64 / n],
    };
    let run = run_em(&sorted, start, floor);
    Ok(fit_from_run(run, start, (c1 + c2) / 2.0, (c1, c2)))
}

/// Re-runs EM on `values` starting from an earlier fit, so the components
/// follow a distribution that has shifted since. A degenerate run returns the
/// earlier parameters and threshold, marked as not converged.
pub fn refine_two_gaussians(values: &[f64], previous: &ThresholdFit) -> Result<ThresholdFit> {
    let (sorted, floor) = prepare(values)?;
    let start = Mixture {
        mu: [previous.mu1, previous.mu2],
        sigma: [previous.sigma1.max(floor), previous.sigma2.max(floor)],
        weight: [previous.weight1, previous.weight2],
    };
    let run = run_em(&sorted, start, floor);
    Ok(fit_from_run(run, start, previous.delta, previous.kmeans_centers))
}
