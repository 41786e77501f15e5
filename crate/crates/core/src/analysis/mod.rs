//! Node-removal classification and theorem-level checks.

mod generator;
mod removal;
mod theorems;

pub use generator::{random_layered_graph, random_layered_path_graph};
pub use removal::{
    classify_removal, enumerate_removals, parse_subset_list, removable_nodes, subsets_up_to,
    EnumerateOptions, Prediction, RemovalReport, RemovalTable, DEGRADED_GAP, MAX_SUBSETS,
    PRESERVED_TOL,
};
pub use theorems::{
    alpha_bound_check, interval_check, AlphaBoundReport, ALPHA_SLACK, INTERVAL_SLACK,
};

use thiserror::Error;

use crate::graph::GraphError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(
        "λ₂ = {lambda2} after removing {removed:?} lies in the unclassifiable band just below 1"
    )]
    Unclassifiable { removed: Vec<String>, lambda2: f64 },
    #[error("removal size {max_size} too large for a graph with {nodes} nodes")]
    RemovalSizeTooLarge { max_size: usize, nodes: usize },
    #[error("{0} removal subsets exceed the limit; pass an explicit override")]
    TooManySubsets(u128),
    #[error("alpha must be finite and nonnegative, got {0}")]
    InvalidAlpha(f64),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
