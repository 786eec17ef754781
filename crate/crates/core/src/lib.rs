//! Discrete edge curvature on undirected graphs and curvature-driven
//! community detection.
//!
//! The crate computes Forman-Ricci curvature, its cycle-augmented variants
//! and Ollivier-Ricci curvature, samples the random graph models used to
//! study them, compares curvature distributions inside and between planted
//! communities, and recovers communities by deleting extreme-curvature edges.

pub mod analysis;
pub mod cli;
pub mod curvature;
pub mod cycles;
pub mod detection;
pub mod error;
pub mod forman;
pub mod generators;
pub mod graph;
pub mod manifest;
pub mod ollivier;
mod transport;

pub use analysis::{curvature_gap, fit_two_gaussians, pearson, GapReport, ThresholdFit};
pub use curvature::{compute, CurvatureVector, Method};
pub use cycles::{build_census, delete_edge_from_census, enumerate_cycles, Cycle, CycleCensus};
pub use detection::{accuracy, detect_communities, DetectionConfig, DetectionResult, Direction, Threshold};
pub use error::{Error, Result};
pub use generators::ModelParams;
pub use graph::{parse_edge_list, parse_labels, write_edge_list, write_labels, Edge, Graph, Partition};
