use std::collections::BTreeMap;

use super::GraphError;

/// A digraph over locally indexed nodes with nonnegative edge weights.
///
/// Nodes are addressed by their position in `labels`. There is at most one
/// edge per ordered pair and no self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    edges: BTreeMap<(usize, usize), f64>,
}

impl WeightedDigraph {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(GraphError::DuplicateNode(label.clone()));
            }
        }
        Ok(Self {
            labels,
            edges: BTreeMap::new(),
        })
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, weight: f64) -> Result<(), GraphError> {
        let n = self.labels.len();
        if src >= n {
            return Err(GraphError::UnknownNode(format!("#{src}")));
        }
        if dst >= n {
            return Err(GraphError::UnknownNode(format!("#{dst}")));
        }
        if src == dst {
            return Err(GraphError::SelfLoop(self.labels[src].clone()));
        }
        if !(weight >= 0.0) || !weight.is_finite() {
            return Err(GraphError::InvalidWeight {
                src: self.labels[src].clone(),
                dst: self.labels[dst].clone(),
                weight,
            });
        }
        if self.edges.insert((src, dst), weight).is_some() {
            return Err(GraphError::DuplicateEdge(
                self.labels[src].clone(),
                self.labels[dst].clone(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Weight of the edge `src -> dst`, zero when the edge is absent.
    pub fn weight(&self, src: usize, dst: usize) -> f64 {
        self.edges.get(&(src, dst)).copied().unwrap_or(0.0)
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.edges.contains_key(&(src, dst))
    }

    /// Edges as `(src, dst, weight)`, ordered by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(s, d), &w)| (s, d, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Incoming edges of `dst` as `(src, weight)`.
    pub fn in_edges(&self, dst: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.edges
            .iter()
            .filter(move |(&(_, d), _)| d == dst)
            .map(|(&(s, _), &w)| (s, w))
    }
}
