//! Invariants checked over generated inputs.

mod common;

use common::*;
use graph_curvature::analysis::{fit_two_gaussians, gap_from_values, histogram, pearson_values};
use graph_curvature::detection::{accuracy, detect_communities};
use graph_curvature::ollivier::{wasserstein1, DiscreteMeasure, TransportProblem};
use graph_curvature::{
    compute, parse_edge_list, parse_labels, write_edge_list, write_labels, CycleCensus, DetectionConfig, Direction,
    Method, Partition, Threshold,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_from(seed: u64, max_vertices: usize, max_edges: usize) -> graph_curvature::Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_vertices, max_edges)
}

fn line_measure(masses: &[f64]) -> DiscreteMeasure {
    let total: f64 = masses.iter().sum();
    DiscreteMeasure::new((0..masses.len() as u64).collect(), masses.iter().map(|m| m / total).collect()).unwrap()
}

fn line_w1(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let cost =
        a.support().iter().map(|&i| b.support().iter().map(|&j| (i as f64 - j as f64).abs()).collect()).collect();
    wasserstein1(&TransportProblem::new(a.clone(), b.clone(), cost).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(seed in any::<u64>()) {
        let g = graph_from(seed, 15, 30);
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn labels_round_trip(labels in proptest::collection::btree_map(0u64..1000, 0usize..6, 1..40)) {
        let p = Partition::from_labels(labels);
        prop_assert_eq!(parse_labels(&write_labels(&p)).unwrap(), p);
    }

    #[test]
    fn curvature_ignores_vertex_names(seed in any::<u64>(), shift in 1u64..1000) {
        let g = graph_from(seed, 10, 22);
        // reverses the vertex order, which changes every edge orientation
        let rename = |v: u64| 5000 - v * 3 + shift;
        let h = g.relabel(rename);
        for method in Method::ALL {
            let a = compute(&g, method).unwrap();
            let b = compute(&h, method).unwrap();
            for (e, v) in a.iter() {
                let w = b.get(graph_curvature::Edge::new(rename(e.0), rename(e.1))).unwrap();
                prop_assert!((v - w).abs() < 1e-12, "{} on {}: {} vs {}", method, e, v, w);
            }
        }
    }

    #[test]
    fn census_deletion_equals_rebuild(seed in any::<u64>(), pick in any::<prop::sample::Index>(), len in 3usize..=5) {
        let g = graph_from(seed, 10, 24);
        prop_assume!(g.edge_count() > 0);
        let e = g.edges().nth(pick.index(g.edge_count())).unwrap();
        let census = CycleCensus::build(&g, len).unwrap();
        let (after, touched) = census.delete_edge(e).unwrap();
        let rebuilt = CycleCensus::build(&g.remove_edge(e).unwrap(), len).unwrap();
        prop_assert_eq!(after.summaries(), rebuilt.summaries());
        let before = census.summaries();
        for (f, summary) in rebuilt.summaries() {
            if before[&f] != summary {
                prop_assert!(touched.contains(&f));
            }
        }
    }

    #[test]
    fn wasserstein_is_a_metric(
        a in proptest::collection::vec(0.01f64..1.0, 5),
        b in proptest::collection::vec(0.01f64..1.0, 5),
        c in proptest::collection::vec(0.01f64..1.0, 5),
    ) {
        let (a, b, c) = (line_measure(&a), line_measure(&b), line_measure(&c));
        let ab = line_w1(&a, &b);
        prop_assert!((ab - line_w1(&b, &a)).abs() < 1e-12);
        prop_assert!(line_w1(&a, &a).abs() < 1e-12);
        prop_assert!(line_w1(&a, &c) <= ab + line_w1(&b, &c) + 1e-12);
        // on a line the optimum is the area between the cumulative distributions
        let mut area = 0.0;
        let (mut fa, mut fb) = (0.0, 0.0);
        for i in 0..4 {
            fa += a.mass()[i];
            fb += b.mass()[i];
            area += (fa - fb).abs();
        }
        prop_assert!((ab - area).abs() < 1e-12);
    }

    #[test]
    fn ollivier_is_bounded(seed in any::<u64>()) {
        let g = graph_from(seed, 14, 40);
        for (_, v) in compute(&g, Method::Orc).unwrap().iter() {
            prop_assert!((-2.0 - 1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn gap_is_affine_invariant(
        within in proptest::collection::vec(-50.0f64..50.0, 3..30),
        between in proptest::collection::vec(-50.0f64..50.0, 3..30),
        scale in 0.1f64..10.0,
        shift in -100.0f64..100.0,
    ) {
        let Ok(base) = gap_from_values(&within, &between) else { return Ok(()) };
        let map = |v: &Vec<f64>| v.iter().map(|x| scale * x + shift).collect::<Vec<_>>();
        let moved = gap_from_values(&map(&within), &map(&between)).unwrap();
        prop_assert!((base.gap - moved.gap).abs() <= 1e-9 * (1.0 + base.gap));
        prop_assert!(base.gap >= 0.0);
    }

    #[test]
    fn pearson_symmetric_and_affine(
        pairs in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 3..40),
        scale in 0.1f64..10.0,
        shift in -5.0f64..5.0,
    ) {
        let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let Ok(r) = pearson_values(&x, &y) else { return Ok(()) };
        prop_assert!((r - pearson_values(&y, &x).unwrap()).abs() < 1e-12);
        let moved: Vec<f64> = x.iter().map(|v| scale * v + shift).collect();
        prop_assert!((r - pearson_values(&moved, &y).unwrap()).abs() < 1e-9);
        prop_assert!((-1.0..=1.0).contains(&r));
    }

    #[test]
    fn threshold_fit_invariants(values in proptest::collection::vec(-30i32..30, 4..120)) {
        let values: Vec<f64> = values.into_iter().map(f64::from).collect();
        let Ok(fit) = fit_two_gaussians(&values) else { return Ok(()) };
        prop_assert!(fit.mu1 <= fit.mu2);
        prop_assert!(fit.mu1 <= fit.delta && fit.delta <= fit.mu2);
        prop_assert!(fit.sigma1 > 0.0 && fit.sigma2 > 0.0);
        for w in fit.log_likelihood.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-9 * w[0].abs().max(1.0));
        }
    }

    #[test]
    fn histogram_conserves_counts(values in proptest::collection::vec(-1e3f64..1e3, 1..200), bins in 1usize..30) {
        let h = histogram(&values, bins).unwrap();
        prop_assert_eq!(h.len(), bins);
        prop_assert_eq!(h.iter().map(|b| b.1).sum::<usize>(), values.len());
    }

    #[test]
    fn detection_is_deterministic(seed in any::<u64>(), tie_seed in any::<u64>()) {
        let g = graph_from(seed, 14, 35);
        prop_assume!(g.edge_count() > 0);
        for method in [Method::Frc, Method::Afrc3, Method::Afrc4, Method::Orc] {
            let cfg = DetectionConfig::new(method).threshold(Threshold::Fixed(0.0)).seed(tie_seed);
            let a = detect_communities(&g, &cfg).unwrap();
            let b = detect_communities(&g, &cfg).unwrap();
            prop_assert_eq!(&a.deletions, &b.deletions);
            let mut seen = std::collections::BTreeSet::new();
            for e in &a.deletions {
                prop_assert!(g.has_edge(*e) && seen.insert(*e));
            }
            prop_assert!(a.iterations <= g.edge_count());
        }
    }

    #[test]
    fn satisfied_threshold_deletes_nothing(seed in any::<u64>()) {
        let g = graph_from(seed, 12, 30);
        prop_assume!(g.edge_count() > 0);
        for method in Method::ALL {
            let values = compute(&g, method).unwrap().to_vec();
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
            for (direction, t) in [(Direction::Max, hi), (Direction::Min, lo)] {
                let cfg = DetectionConfig::new(method).direction(direction).threshold(Threshold::Fixed(t));
                let r = detect_communities(&g, &cfg).unwrap();
                prop_assert!(r.deletions.is_empty());
                prop_assert_eq!(r.partition, g.connected_components());
            }
        }
    }

    #[test]
    fn accuracy_ignores_label_names(labels in proptest::collection::vec(0usize..5, 2..40), other in proptest::collection::vec(0usize..5, 40)) {
        let truth = Partition::from_labels(labels.iter().enumerate().map(|(v, &l)| (v as u64, l)));
        let detected = Partition::from_labels(labels.iter().enumerate().map(|(v, _)| (v as u64, other[v])));
        let a = accuracy(&detected, &truth).unwrap();
        let renamed = Partition::from_labels(labels.iter().enumerate().map(|(v, _)| (v as u64, 100 - other[v])));
        prop_assert_eq!(a, accuracy(&renamed, &truth).unwrap());
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert_eq!(accuracy(&truth, &truth).unwrap(), 1.0);
    }
}
