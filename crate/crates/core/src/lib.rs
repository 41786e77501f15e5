//! Algebraic connectivity of layered leader-follower graphs.
//!
//! * [`graph`]: layered digraphs, path-layer validation, cones and
//!   induced subgraphs.
//! * [`spectral`]: Laplacians, grounded minors, a Sturm-bisection kernel for
//!   tridiagonal blocks, a dense Hessenberg-QR eigensolver used as an
//!   independent check, and the matrix-tree identity.
//! * [`analysis`]: node-removal classification by from-above degree and the
//!   property suites behind `layerconn verify`.
//! * [`consensus`]: second-order formation consensus simulation.

// Negated float comparisons are used on purpose so that NaN fails checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod consensus;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod spectral;
pub mod verify;
