//! Laplacians, grounded minors and eigenvalue kernels.

mod arborescence;
mod dense;
mod layered;
mod matrix;
mod tridiagonal;

pub use arborescence::{enumerate_arborescences, matrix_tree_weight, MAX_ENUMERATION_NODES};
pub use dense::{
    dense_eigenvalues, dense_real_eigenvalues, merge_clusters, Eigenvalue, CLUSTER_TOL,
};
pub use layered::{
    grounded_cone, lambda2_layered, lambda2_oracle, Contribution, SpectralReport, REALNESS_TOL,
};
pub use matrix::{grounded, laplacian, SquareMatrix};
pub use tridiagonal::{
    sturm_count, symmetric_eigenvalue, symmetric_smallest_eigenvalue, tridiagonal_smallest_eig,
    tridiagonalize, TridiagonalMatrix, BISECTION_TOL,
};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("index {index} out of range for a {n}x{n} matrix")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix of size {n} is too small; need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("graph with {n} nodes exceeds the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("QR iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("spectrum is not real: eigenvalue {re} + {im}i")]
    ComplexSpectrum { re: f64, im: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
