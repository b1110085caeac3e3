use std::io;

use thiserror::Error;

use crate::embedding::SparseEmbedding;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: edge weight must be positive and finite, got {weight}")]
    InvalidWeight { line: usize, weight: f64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("vertex {0} listed more than once")]
    DuplicateVertex(u32),

    #[error("seed vertex {0} has degree zero")]
    ZeroDegreeSeed(u32),

    /// A set whose conductance is undefined: empty, the whole vertex set,
    /// or one with zero volume on either side.
    #[error("conductance undefined: {0}")]
    Domain(&'static str),

    #[error("empty embedding")]
    EmptyEmbedding,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("solver did not converge after {iterations} iterations (kkt residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        best: Box<SparseEmbedding>,
    },

    #[error("flow methods need integer edge weights")]
    NonIntegerWeights,

    #[error("capacity arithmetic overflows 63 bits")]
    CapacityOverflow,
}
