//! Local graph clustering.
//!
//! Given a seed vertex or seed set, find a low-conductance cluster nearby
//! with work proportional to the cluster rather than the graph:
//!
//! - [`diffusion`]: approximate personalized PageRank (push), PageRank
//!   Nibble, and ℓ1-regularized PageRank, each rounded by a [`sweep_cut`].
//! - [`improve`]: MQI, FlowImprove, and SimpleLocal refine a given cluster
//!   with exact integer max-flow ([`flow`]).
//! - [`crd`]: Capacity Releasing Diffusion.
//! - [`pipelines`]: network community profiles, label prediction, and
//!   recovery scores.

pub mod cluster;
pub mod crd;
pub mod diffusion;
pub mod embedding;
pub mod error;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod improve;
pub mod pipelines;

pub use cluster::{conductance, read_vertex_list, sweep_cut, sweep_profile, Cluster, SeedSet};
pub use crd::{crd_cluster, crd_diffuse, CrdParams, CrdResult};
pub use diffusion::{
    approximate_pagerank, l1reg_pagerank, pagerank_nibble, spectral_cluster, DiffusionParams,
    PushResult, SeedMass, SpectralMethod,
};
pub use embedding::SparseEmbedding;
pub use error::{Error, Result};
pub use flow::{max_flow, FlowNetwork, MaxFlow};
pub use graph::{load_edge_list, parse_edge_list, Graph, LoadOptions};
pub use improve::{flow_improve, mqi, simple_local, ImproveResult};
