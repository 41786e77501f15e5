//! Seeded random layered graphs for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphSpec, LayeredGraph};

fn label(i: usize) -> String {
    format!("v{}", i + 1)
}

fn layer_labels(widths: &[usize]) -> Vec<Vec<String>> {
    let mut next = 0;
    widths
        .iter()
        .map(|&w| {
            let l = (next..next + w).map(label).collect();
            next += w;
            l
        })
        .collect()
}

/// Random layered path graph satisfying the overlap condition.
///
/// The first layer is a single node; every other layer has between 1 and
/// `max_width` nodes cut into random paths. Along each path the upper
/// neighbourhood is a window of consecutive upper-layer nodes whose ends
/// move by at most one per step and never shrink from both sides (or grow
/// on both sides) at once, so adjacent neighbourhoods differ by at most
/// one node in each direction.
pub fn random_layered_path_graph(seed: u64, layers: usize, max_width: usize) -> LayeredGraph {
    assert!(layers >= 1 && max_width >= 1, "bounds must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let widths: Vec<usize> = std::iter::once(1)
        .chain((1..layers).map(|_| rng.gen_range(1..=max_width)))
        .collect();
    let names = layer_labels(&widths);
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    for li in 1..layers {
        let upper = &names[li - 1];
        let up = upper.len() as isize;
        let nodes = &names[li];
        // window [lo, hi] over the upper layer, empty when lo > hi
        let mut window: (isize, isize) = (0, -1);
        for (k, v) in nodes.iter().enumerate() {
            let starts_path = k == 0 || rng.gen_bool(0.3);
            if starts_path {
                let lo = rng.gen_range(0..up);
                let len = if rng.gen_bool(0.85) {
                    rng.gen_range(1..=3)
                } else {
                    0
                };
                window = (lo, (lo + len - 1).min(up - 1));
            } else {
                intra.push([nodes[k - 1].clone(), v.clone()]);
                const MOVES: [(isize, isize); 7] =
                    [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
                let valid: Vec<(isize, isize)> = MOVES
                    .iter()
                    .map(|&(dl, dh)| (window.0 + dl, window.1 + dh))
                    .filter(|&(lo, hi)| lo >= 0 && lo <= up && hi >= -1 && hi < up && lo <= hi + 1)
                    .collect();
                window = *valid.choose(&mut rng).unwrap();
            }
            for u in window.0.max(0)..=window.1 {
                inter.push([upper[u as usize].clone(), v.clone()]);
            }
        }
    }
    LayeredGraph::from_spec(&GraphSpec {
        layers: names,
        intra_edges: intra,
        inter_edges: inter,
    })
    .expect("generated graph is layered")
}

/// Random layered graph with arbitrary undirected layers.
///
/// The first layer is a clique of 1..=3 nodes (so its λ₂ equals its size
/// when it has more than one node), and every node below it receives edges
/// from at least `min_from_above` upper nodes.
pub fn random_layered_graph(
    seed: u64,
    layers: usize,
    max_width: usize,
    min_from_above: usize,
) -> LayeredGraph {
    assert!(layers >= 1 && max_width >= 1, "bounds must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let floor = min_from_above.max(1);
    let first = rng.gen_range(floor..=floor.max(3));
    let widths: Vec<usize> = std::iter::once(first)
        .chain((1..layers).map(|_| rng.gen_range(floor..=floor.max(max_width))))
        .collect();
    let names = layer_labels(&widths);
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    for (li, nodes) in names.iter().enumerate() {
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if li == 0 || rng.gen_bool(0.4) {
                    intra.push([nodes[a].clone(), nodes[b].clone()]);
                }
            }
        }
        if li == 0 {
            continue;
        }
        let upper = &names[li - 1];
        for v in nodes {
            let d = rng.gen_range(min_from_above.min(upper.len())..=upper.len());
            for u in upper.choose_multiple(&mut rng, d) {
                inter.push([u.clone(), v.clone()]);
            }
        }
    }
    LayeredGraph::from_spec(&GraphSpec {
        layers: names,
        intra_edges: intra,
        inter_edges: inter,
    })
    .expect("generated graph is layered")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            random_layered_path_graph(1, 3, 4),
            random_layered_path_graph(1, 3, 4)
        );
        assert_eq!(
            random_layered_graph(7, 3, 4, 2),
            random_layered_graph(7, 3, 4, 2)
        );
    }

    #[test]
    fn path_generator_contract() {
        for seed in 0..300 {
            let g = random_layered_path_graph(seed, 2 + (seed as usize % 4), 5);
            assert!(g.validate_layered_path().is_ok(), "seed {seed}");
            let overlap = g.check_overlap_condition();
            assert!(overlap.holds, "seed {seed}: {:?}", overlap.violations);
            assert!(g.node_count() <= 25);
        }
    }

    #[test]
    fn general_generator_respects_degree_floor() {
        for seed in 0..100 {
            let g = random_layered_graph(seed, 4, 4, 2);
            let deg = g.from_above_degrees();
            assert!(g.layers().iter().skip(1).flatten().all(|v| deg[v.0] >= 2));
            assert!(g.layers()[0].len() >= 2);
        }
    }
}
