//! Network immunization by spectral-radius reduction.
//!
//! Nodes are ranked by how many closed walks of length six pass through them,
//! estimated with randomized summary graphs, and a budget of `k` nodes is chosen
//! greedily under a submodular score that penalizes picking adjacent nodes.
//!
//! * [`graph`]: edge-list loading, node removal, degrees.
//! * [`spectral`]: `lambda_max`, eigendrop, `trace(A^p)`.
//! * [`walks`]: exact per-vertex closed 6-walk counts and the `f_p`/`g_p` objectives.
//! * [`sketch`]: the summary-graph estimator.
//! * [`immunize`]: the greedy selector and baselines.
//! * [`bench`]: eigendrop sweeps, CSV and SVG output.

pub mod bench;
pub mod error;
pub mod generators;
pub mod graph;
pub mod immunize;
pub mod sketch;
pub mod spectral;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{Graph, LoadOptions, NodeId, NodeSet, Subgraph};
pub use immunize::{GammaMode, GreedyConfig, ImmunizationResult, ScoreParams};
pub use sketch::{estimate_walks, WalkEstimates};
pub use spectral::{eigendrop, lambda_max, trace_power, PowerIterConfig};
pub use walks::{exact_cw6_all, WalkCountTable};
