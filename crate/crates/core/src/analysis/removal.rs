use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::format::{opt_sig12, table_float};
use crate::graph::{LayeredGraph, NodeId};
use crate::spectral::lambda2_layered;

/// `|λ₂ - 1|` at or below this counts as "λ₂ = 1".
pub const PRESERVED_TOL: f64 = 1e-8;
/// `λ₂` at or below `1 - DEGRADED_GAP` counts as "λ₂ < 1".
pub const DEGRADED_GAP: f64 = 1e-6;
/// Default cap on the number of subsets [`enumerate_removals`] will visit.
pub const MAX_SUBSETS: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    /// Every surviving follower keeps an upper neighbour: λ₂ stays 1.
    Preserved,
    /// Some follower lost all its upper neighbours: λ₂ drops below 1.
    Degraded,
    /// The overlap condition fails, so no prediction is made.
    NotCovered,
    /// Fewer than two nodes survive; λ₂ is undefined.
    NotApplicable,
}

impl Prediction {
    pub fn as_str(self) -> &'static str {
        match self {
            Prediction::Preserved => "preserved",
            Prediction::Degraded => "degraded",
            Prediction::NotCovered => "not-covered",
            Prediction::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalReport {
    pub removed: Vec<String>,
    pub condition1_holds: bool,
    pub zero_degree_witnesses: Vec<String>,
    pub predicted: Prediction,
    #[serde(serialize_with = "opt_sig12")]
    pub lambda2: Option<f64>,
    /// `None` when no prediction was made.
    pub consistent: Option<bool>,
}

fn join_set(ids: &[String]) -> String {
    if ids.is_empty() {
        "---".to_string()
    } else {
        ids.join(" ")
    }
}

impl RemovalReport {
    pub const CSV_HEADER: &'static str = "removed,lambda2,witnesses,predicted,consistent";

    /// One CSV record; sets are space-separated, `---` for the empty set.
    pub fn csv_row(&self) -> String {
        let consistent = match self.consistent {
            Some(true) => "consistent",
            Some(false) => "inconsistent",
            None => "n/a",
        };
        format!(
            "{},{},{},{},{}",
            join_set(&self.removed),
            table_float(self.lambda2),
            join_set(&self.zero_degree_witnesses),
            self.predicted.as_str(),
            consistent
        )
    }
}

/// Rows in (size, node order) order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalTable {
    pub rows: Vec<RemovalReport>,
}

impl RemovalTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", RemovalReport::CSV_HEADER).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.csv_row()).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Removes `removed` from `g` and compares the from-above-degree prediction
/// with the computed λ₂.
///
/// A λ₂ strictly between `1 - DEGRADED_GAP` and `1 - PRESERVED_TOL` cannot
/// be classified and is reported as an error.
pub fn classify_removal(
    g: &LayeredGraph,
    removed: &BTreeSet<NodeId>,
) -> Result<RemovalReport, AnalysisError> {
    g.validate_layered_path()?;
    let h = g.remove_nodes(removed)?;
    let condition1_holds = g.check_overlap_condition().holds && h.check_overlap_condition().holds;
    let witnesses = h.zero_from_above_nodes();
    let lambda2 = lambda2_layered(&h)?.lambda2;
    let predicted = match lambda2 {
        None => Prediction::NotApplicable,
        Some(_) if !condition1_holds => Prediction::NotCovered,
        Some(_) if witnesses.is_empty() => Prediction::Preserved,
        Some(_) => Prediction::Degraded,
    };
    let consistent = match (predicted, lambda2) {
        (Prediction::Preserved | Prediction::Degraded, Some(l)) => {
            if l > 1.0 - DEGRADED_GAP && (l - 1.0).abs() > PRESERVED_TOL {
                return Err(AnalysisError::Unclassifiable {
                    removed: g.labels_of(removed),
                    lambda2: l,
                });
            }
            Some(match predicted {
                Prediction::Preserved => (l - 1.0).abs() <= PRESERVED_TOL,
                _ => l <= 1.0 - DEGRADED_GAP,
            })
        }
        _ => None,
    };
    Ok(RemovalReport {
        removed: g.labels_of(removed),
        condition1_holds,
        zero_degree_witnesses: h.labels_of(&witnesses),
        predicted,
        lambda2,
        consistent,
    })
}

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    /// Visit more than [`MAX_SUBSETS`] subsets.
    pub allow_large: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// All subsets of `pool` with at most `max_size` elements, by size and then
/// lexicographically.
pub fn subsets_up_to(pool: &[NodeId], max_size: usize) -> Vec<BTreeSet<NodeId>> {
    let mut out = Vec::new();
    for k in 0..=max_size.min(pool.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| pool[i]).collect());
            // advance to the next k-combination
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + pool.len() - k) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn order_key(s: &BTreeSet<NodeId>) -> (usize, Vec<NodeId>) {
    (s.len(), s.iter().copied().collect())
}

/// Nodes eligible for removal: everything outside the first layer.
pub fn removable_nodes(g: &LayeredGraph) -> Vec<NodeId> {
    g.layers().iter().skip(1).flatten().copied().collect()
}

/// Classifies every removal set of size at most `max_size` (or exactly the
/// sets in `subsets`, deduplicated) in a deterministic order.
pub fn enumerate_removals(
    g: &LayeredGraph,
    max_size: usize,
    subsets: Option<&[BTreeSet<NodeId>]>,
    opts: &EnumerateOptions,
) -> Result<RemovalTable, AnalysisError> {
    let mut sets: Vec<BTreeSet<NodeId>> = match subsets {
        Some(list) => list.to_vec(),
        None => {
            let pool = removable_nodes(g);
            if max_size + 1 > g.node_count().max(1) {
                return Err(AnalysisError::RemovalSizeTooLarge {
                    max_size,
                    nodes: g.node_count(),
                });
            }
            let count: u128 = (0..=max_size.min(pool.len()))
                .map(|k| binomial(pool.len(), k))
                .sum();
            if count > MAX_SUBSETS && !opts.allow_large {
                return Err(AnalysisError::TooManySubsets(count));
            }
            subsets_up_to(&pool, max_size)
        }
    };
    sets.sort_by_key(order_key);
    sets.dedup();

    let run = || -> Result<Vec<RemovalReport>, AnalysisError> {
        sets.par_iter().map(|s| classify_removal(g, s)).collect()
    };
    let rows = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| AnalysisError::ThreadPool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(RemovalTable { rows })
}

/// Parses a subset list: one set per line, ids separated by commas or
/// whitespace, `---` for the empty set, `#` starts a comment.
pub fn parse_subset_list(
    g: &LayeredGraph,
    text: &str,
) -> Result<Vec<BTreeSet<NodeId>>, AnalysisError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "---" {
            out.push(BTreeSet::new());
            continue;
        }
        let labels: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        out.push(g.ids(&labels)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Fixture};

    fn classify(g: &LayeredGraph, labels: &[&str]) -> RemovalReport {
        classify_removal(g, &g.ids(labels).unwrap()).unwrap()
    }

    #[test]
    fn gtri_single_removal() {
        let g = fixtures::g_tri();
        let r = classify(&g, &["v2"]);
        assert_eq!(r.zero_degree_witnesses, ["v4"]);
        assert_eq!(r.predicted, Prediction::Degraded);
        assert!((r.lambda2.unwrap() - 0.4679).abs() < 5e-5);
        assert_eq!(r.consistent, Some(true));
        assert_eq!(r.csv_row(), "v2,0.4679,v4,degraded,consistent");
    }

    #[test]
    fn gtri_preserving_removals() {
        let g = fixtures::g_tri();
        let r = classify(&g, &["v2", "v4", "v7", "v8"]);
        assert!(r.zero_degree_witnesses.is_empty());
        assert_eq!(r.predicted, Prediction::Preserved);
        assert!((r.lambda2.unwrap() - 1.0).abs() <= PRESERVED_TOL);
        let r = classify(&g, &[]);
        assert_eq!(r.predicted, Prediction::Preserved);
        assert_eq!(r.csv_row(), "---,1.0000,---,preserved,consistent");
    }

    #[test]
    fn leader_and_unknown_rejected() {
        let g = fixtures::g_tri();
        let v1 = g.ids(&["v1"]).unwrap();
        assert!(matches!(
            classify_removal(&g, &v1),
            Err(AnalysisError::Graph(_))
        ));
        assert!(matches!(
            classify_removal(&g, &[NodeId(99)].into()),
            Err(AnalysisError::Graph(_))
        ));
    }

    #[test]
    fn overlap_failure_withholds_prediction() {
        let g = LayeredGraph::build(
            &[&["r"], &["u", "w"], &["a", "b"]],
            &[("u", "w"), ("a", "b")],
            &[("r", "u"), ("r", "w"), ("u", "a"), ("w", "a")],
        )
        .unwrap();
        let r = classify_removal(&g, &BTreeSet::new()).unwrap();
        assert!(!r.condition1_holds);
        assert_eq!(r.predicted, Prediction::NotCovered);
        assert_eq!(r.consistent, None);
        assert!(r.lambda2.is_some());
    }

    #[test]
    fn single_node_graph_row() {
        let g = LayeredGraph::build(&[&["v1"]], &[], &[]).unwrap();
        let t = enumerate_removals(&g, 0, None, &EnumerateOptions::default()).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].predicted, Prediction::NotApplicable);
        assert_eq!(t.rows[0].csv_row(), "---,n/a,---,not-applicable,n/a");
    }

    #[test]
    fn sq2_explicit_subsets() {
        let g = fixtures::g_sq2();
        let list = parse_subset_list(&g, "v2\nv2,v3\n# comment\nv2 v3 v4\n").unwrap();
        let t = enumerate_removals(&g, 0, Some(&list), &EnumerateOptions::default()).unwrap();
        let lambdas: Vec<f64> = t.rows.iter().map(|r| r.lambda2.unwrap()).collect();
        assert!((lambdas[0] - 1.0).abs() < 1e-8);
        assert!((lambdas[1] - 0.5357).abs() < 5e-5);
        assert!((lambdas[2] - 0.2531).abs() < 5e-5);
        assert_eq!(t.rows[1].zero_degree_witnesses, ["v7"]);
        assert_eq!(t.rows[2].zero_degree_witnesses, ["v7", "v8"]);
    }

    #[test]
    fn gtri_exhaustive_pairs_are_consistent() {
        let g = fixtures::g_tri();
        let t = enumerate_removals(&g, 2, None, &EnumerateOptions::default()).unwrap();
        assert_eq!(t.rows.len(), 1 + 9 + 36);
        assert!(t.rows.iter().all(|r| r.consistent == Some(true)));
        // size-then-node order
        assert_eq!(t.rows[1].removed, ["v2"]);
        assert_eq!(t.rows[10].removed, ["v2", "v3"]);
        let csv = t.to_csv();
        assert!(csv.starts_with("removed,lambda2,witnesses,predicted,consistent\n"));
        assert_eq!(csv.lines().count(), 47);
    }

    #[test]
    fn output_is_independent_of_jobs() {
        let g = Fixture::Sq1.graph();
        let one = enumerate_removals(
            &g,
            2,
            None,
            &EnumerateOptions {
                jobs: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let two = enumerate_removals(
            &g,
            2,
            None,
            &EnumerateOptions {
                jobs: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one.to_csv(), two.to_csv());
    }

    #[test]
    fn size_guards() {
        let g = fixtures::g_tri();
        assert!(matches!(
            enumerate_removals(&g, 10, None, &EnumerateOptions::default()),
            Err(AnalysisError::RemovalSizeTooLarge { .. })
        ));
        assert_eq!(binomial(40, 20), 137_846_528_820);
        let wide = LayeredGraph::from_spec(&crate::graph::GraphSpec {
            layers: vec![vec!["r".into()], (0..30).map(|i| format!("n{i}")).collect()],
            intra_edges: vec![],
            inter_edges: vec![],
        })
        .unwrap();
        assert!(matches!(
            enumerate_removals(&wide, 10, None, &EnumerateOptions::default()),
            Err(AnalysisError::TooManySubsets(_))
        ));
    }

    #[test]
    fn combinations_in_order() {
        let pool: Vec<NodeId> = (0..4).map(NodeId).collect();
        let s = subsets_up_to(&pool, 2);
        assert_eq!(s.len(), 11);
        assert_eq!(s[5], [NodeId(0), NodeId(1)].into());
        assert_eq!(s[10], [NodeId(2), NodeId(3)].into());
        assert_eq!(subsets_up_to(&pool, 0), vec![BTreeSet::new()]);
    }
}
