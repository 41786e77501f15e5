//! Both sides of the matrix-tree identity for weighted digraphs.

use super::{grounded, laplacian, SpectralError};
use crate::graph::WeightedDigraph;

/// Largest graph accepted by [`enumerate_arborescences`].
pub const MAX_ENUMERATION_NODES: usize = 12;

/// Determinant of the Laplacian with the root's row and column deleted.
pub fn matrix_tree_weight(g: &WeightedDigraph, root: usize) -> Result<f64, SpectralError> {
    Ok(grounded(&laplacian(g), root)?.determinant())
}

/// Total weight of all spanning trees directed away from `root`, by
/// exhaustive choice of one incoming edge per non-root node.
pub fn enumerate_arborescences(g: &WeightedDigraph, root: usize) -> Result<f64, SpectralError> {
    let n = g.len();
    if n > MAX_ENUMERATION_NODES {
        return Err(SpectralError::TooLarge {
            n,
            max: MAX_ENUMERATION_NODES,
        });
    }
    if root >= n {
        return Err(SpectralError::IndexOutOfRange { index: root, n });
    }
    let incoming: Vec<Vec<(usize, f64)>> = (0..n).map(|v| g.in_edges(v).collect()).collect();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut parent = vec![usize::MAX; n];
    Ok(choose(&others, 0, &incoming, &mut parent, root))
}

fn choose(
    others: &[usize],
    at: usize,
    incoming: &[Vec<(usize, f64)>],
    parent: &mut [usize],
    root: usize,
) -> f64 {
    if at == others.len() {
        return if reaches_root(parent, root) { 1.0 } else { 0.0 };
    }
    let v = others[at];
    let mut total = 0.0;
    for &(src, w) in &incoming[v] {
        parent[v] = src;
        total += w * choose(others, at + 1, incoming, parent, root);
    }
    parent[v] = usize::MAX;
    total
}

/// Every parent chain ends at the root (no cycles).
fn reaches_root(parent: &[usize], root: usize) -> bool {
    let n = parent.len();
    (0..n).all(|start| {
        let mut v = start;
        for _ in 0..n {
            if v == root {
                return true;
            }
            v = parent[v];
        }
        v == root
    })
}
