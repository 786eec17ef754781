use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },

    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),

    #[error("vertex {0} is not in the graph")]
    MissingVertex(u64),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("measures carry different total mass ({supply} vs {demand})")]
    MassMismatch { supply: f64, demand: f64 },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("degenerate curvature gap: {reason} (within mean {kappa_within:?}, between mean {kappa_between:?})")]
    DegenerateGap { reason: &'static str, kappa_within: Option<f64>, kappa_between: Option<f64> },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("partitions or vectors refer to different graphs: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
