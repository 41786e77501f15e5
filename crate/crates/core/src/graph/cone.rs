use super::{GraphError, WeightedDigraph};

/// Label given to the apex of every cone.
pub const APEX_LABEL: &str = "*";

/// A graph plus an apex node with one weighted edge to every original node.
///
/// The apex is node 0 of [`ConeGraph::digraph`]; original node `i` becomes
/// node `i + 1`. Apex edges of weight zero are kept so the weight map stays
/// total.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeGraph {
    digraph: WeightedDigraph,
}

impl ConeGraph {
    /// Builds the cone of `base` with apex weights `f` (one per node of
    /// `base`). Every edge of `base` gets weight 1.
    pub fn new(base: &WeightedDigraph, f: &[f64]) -> Result<Self, GraphError> {
        if f.len() != base.len() {
            return Err(GraphError::Format(format!(
                "cone weight map has {} entries for {} nodes",
                f.len(),
                base.len()
            )));
        }
        let labels = std::iter::once(APEX_LABEL.to_string()).chain(base.labels().iter().cloned());
        let mut digraph = WeightedDigraph::new(labels)?;
        for (i, &w) in f.iter().enumerate() {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(GraphError::InvalidWeight {
                    src: APEX_LABEL.to_string(),
                    dst: base.labels()[i].clone(),
                    weight: w,
                });
            }
            digraph.add_edge(0, i + 1, w)?;
        }
        for (s, d, _) in base.edges() {
            digraph.add_edge(s + 1, d + 1, 1.0)?;
        }
        Ok(Self { digraph })
    }

    pub fn digraph(&self) -> &WeightedDigraph {
        &self.digraph
    }

    pub fn apex(&self) -> usize {
        0
    }

    pub fn apex_weights(&self) -> Vec<f64> {
        (1..self.digraph.len())
            .map(|i| self.digraph.weight(0, i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_cone() {
        let base = WeightedDigraph::new(["v"]).unwrap();
        let cone = ConeGraph::new(&base, &[1.0]).unwrap();
        assert_eq!(cone.digraph().len(), 2);
        assert_eq!(cone.digraph().weight(0, 1), 1.0);
        assert_eq!(cone.digraph().in_edges(0).count(), 0);
    }

    #[test]
    fn zero_weights_are_retained() {
        let mut base = WeightedDigraph::new(["a", "b"]).unwrap();
        base.add_edge(0, 1, 1.0).unwrap();
        base.add_edge(1, 0, 1.0).unwrap();
        let cone = ConeGraph::new(&base, &[0.0, 0.0]).unwrap();
        assert!(cone.digraph().has_edge(0, 1) && cone.digraph().has_edge(0, 2));
        assert_eq!(cone.apex_weights(), vec![0.0, 0.0]);
    }

    #[test]
    fn negative_weight_rejected() {
        let base = WeightedDigraph::new(["a"]).unwrap();
        assert!(matches!(
            ConeGraph::new(&base, &[-1.0]),
            Err(GraphError::InvalidWeight { .. })
        ));
    }
}
