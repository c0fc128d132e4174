//! Synthetic underground-parking-lot LiDAR datasets and dense semantic
//! occupancy ground truth.
//!
//! The crate covers the full path from nothing to evaluated occupancy grids:
//!
//! * [`simworld`] — procedural parking-lot scenes with an analytic occupancy
//!   oracle and a semantic LiDAR simulator,
//! * [`dataset`] — nuScenes-structured dataset writing, reading and
//!   validation (relational JSON tables, point bins, lidarseg files),
//! * [`annotate`] — 3D box annotations with ray-cast visibility levels,
//! * [`stitchfuse`] — multi-frame point cloud aggregation with
//!   static/dynamic separation,
//! * [`densify`] — normal estimation, grid Poisson surface reconstruction
//!   and mesh refinement into dense surface points,
//! * [`occgrid`] — voxelization, nearest-neighbor semantic transfer and the
//!   dense ground-truth assembly,
//! * [`evalkit`] — SC IoU / SSC mIoU evaluation.
//!
//! All geometry uses the conventions fixed in [`geom`].

pub mod annotate;
pub mod config;
pub mod dataset;
pub mod densify;
pub mod error;
pub mod evalkit;
pub mod geom;
pub mod kdtree;
pub mod occgrid;
pub mod ply;
pub mod simworld;
pub mod stitchfuse;

pub use error::{Error, Result};
