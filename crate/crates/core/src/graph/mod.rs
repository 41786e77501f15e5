//! Weighted digraphs, layered graphs and cones.

mod cone;
mod digraph;
mod layered;

pub use cone::{ConeGraph, APEX_LABEL};
pub use digraph::WeightedDigraph;
pub use layered::{
    GraphSpec, LayeredGraph, OverlapReport, OverlapViolation, PathLayerDecomposition,
};

use thiserror::Error;

/// Dense node index into a graph's label universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("malformed graph description: {0}")]
    Format(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error(
        "edge ({src}, {dst}) has invalid weight {weight}; weights must be finite and nonnegative"
    )]
    InvalidWeight {
        src: String,
        dst: String,
        weight: f64,
    },
    #[error("layer rule violated by edge ({src}, {dst}): {reason}")]
    LayerRule {
        src: String,
        dst: String,
        reason: String,
    },
    #[error("graph has no layers")]
    NoLayers,
    #[error("first layer must hold exactly one node, found {0}")]
    LeaderNotSingleton(usize),
    #[error("layer {layer} is not a union of paths: {reason}")]
    NotPathUnion { layer: usize, reason: String },
    #[error("leader removal forbidden: `{0}` is in the first layer")]
    LeaderRemoval(String),
}
