//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("scene generation infeasible: {constraint}")]
    InfeasibleScene { constraint: String },

    #[error("unknown object index {0}")]
    UnknownObject(usize),

    #[error("source semantic tag {0} outside 0..=30")]
    TagOutOfRange(u8),

    #[error("file {path} has size {size}, not a multiple of {record} bytes")]
    TruncatedFile { path: PathBuf, size: u64, record: u64 },

    #[error("not enough points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("degenerate neighborhood: every input point had a rank-deficient neighborhood")]
    DegenerateNeighborhood,

    #[error("conjugate gradient did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    CgDidNotConverge { residual: f64, iterations: usize },

    #[error("iso-surface extraction produced no triangles")]
    EmptyIsoSurface,

    #[error("semantic grid has no occupied voxels")]
    EmptySemanticGrid,

    #[error("grid specs differ between prediction and ground truth")]
    GridSpecMismatch,

    #[error("object {0} has no box pose for the requested frame")]
    MissingBoxPose(usize),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("bad grid container file {path}: {reason}")]
    BadContainer { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Wrap an error with the pipeline stage it came from.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }
}
