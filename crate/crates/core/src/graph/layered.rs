use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{ConeGraph, GraphError, NodeId, WeightedDigraph};

/// On-disk description of a layered graph.
///
/// Intra-layer edges are listed once and are undirected; inter-layer edges
/// are directed from the upper layer to the next one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub layers: Vec<Vec<String>>,
    #[serde(default)]
    pub intra_edges: Vec<[String; 2]>,
    #[serde(default)]
    pub inter_edges: Vec<[String; 2]>,
}

impl GraphSpec {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec serializes")
    }
}

/// A digraph whose nodes are partitioned into ordered layers.
///
/// Node ids index a fixed universe of labels, so ids stay valid (and are
/// never reused) after nodes are removed. Intra-layer edges are stored in
/// both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    labels: Vec<String>,
    layer_of: Vec<Option<usize>>,
    layers: Vec<Vec<NodeId>>,
    intra: BTreeSet<(NodeId, NodeId)>,
    inter: BTreeSet<(NodeId, NodeId)>,
}

/// Maximal path components of every layer, each listed end to end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLayerDecomposition {
    pub layers: Vec<Vec<Vec<NodeId>>>,
}

impl PathLayerDecomposition {
    /// `(layer index, path)` pairs in layer-major order.
    pub fn paths(&self) -> impl Iterator<Item = (usize, &[NodeId])> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(i, ps)| ps.iter().map(move |p| (i, p.as_slice())))
    }
}

/// An intra-layer edge at which the from-above neighbourhoods differ by more
/// than one node in some direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapViolation {
    pub edge: (String, String),
    pub first_minus_second: Vec<String>,
    pub second_minus_first: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub holds: bool,
    pub violations: Vec<OverlapViolation>,
}

impl LayeredGraph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self, GraphError> {
        let mut labels = Vec::new();
        let mut layer_of = Vec::new();
        let mut index: HashMap<&str, NodeId> = HashMap::new();
        let mut layers = Vec::with_capacity(spec.layers.len());
        for (li, layer) in spec.layers.iter().enumerate() {
            let mut ids = Vec::with_capacity(layer.len());
            for label in layer {
                let id = NodeId(labels.len());
                if index.insert(label.as_str(), id).is_some() {
                    return Err(GraphError::DuplicateNode(label.clone()));
                }
                labels.push(label.clone());
                layer_of.push(Some(li));
                ids.push(id);
            }
            layers.push(ids);
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| GraphError::UnknownNode(label.to_string()))
        };

        let mut intra = BTreeSet::new();
        for [a, b] in &spec.intra_edges {
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            let (lu, lv) = (layer_of[u.0].unwrap(), layer_of[v.0].unwrap());
            if lu != lv {
                return Err(GraphError::LayerRule {
                    src: a.clone(),
                    dst: b.clone(),
                    reason: format!(
                        "intra-layer edge joins layer {} and layer {}",
                        lu + 1,
                        lv + 1
                    ),
                });
            }
            if !intra.insert((u, v)) || !intra.insert((v, u)) {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
        }

        let mut inter = BTreeSet::new();
        for [a, b] in &spec.inter_edges {
            let (u, v) = (lookup(a)?, lookup(b)?);
            if u == v {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            let (lu, lv) = (layer_of[u.0].unwrap(), layer_of[v.0].unwrap());
            if lv != lu + 1 {
                let reason = if lv == lu {
                    format!(
                        "inter-layer edge within layer {}; list it under intra_edges",
                        lu + 1
                    )
                } else if lv < lu {
                    format!("upward edge from layer {} to layer {}", lu + 1, lv + 1)
                } else {
                    format!("edge skips from layer {} to layer {}", lu + 1, lv + 1)
                };
                return Err(GraphError::LayerRule {
                    src: a.clone(),
                    dst: b.clone(),
                    reason,
                });
            }
            if !inter.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
        }

        let g = Self {
            labels,
            layer_of,
            layers,
            intra,
            inter,
        };
        debug_assert!(g.layer_rule_holds());
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        Self::from_spec(&GraphSpec::from_json(text)?)
    }

    /// Convenience constructor from string slices.
    pub fn build(
        layers: &[&[&str]],
        intra_edges: &[(&str, &str)],
        inter_edges: &[(&str, &str)],
    ) -> Result<Self, GraphError> {
        let owned = |(a, b): &(&str, &str)| [a.to_string(), b.to_string()];
        Self::from_spec(&GraphSpec {
            layers: layers
                .iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect(),
            intra_edges: intra_edges.iter().map(owned).collect(),
            inter_edges: inter_edges.iter().map(owned).collect(),
        })
    }

    /// Serializable description of the surviving graph.
    pub fn to_spec(&self) -> GraphSpec {
        let label = |id: NodeId| self.labels[id.0].clone();
        GraphSpec {
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(|&v| label(v)).collect())
                .collect(),
            intra_edges: self
                .intra
                .iter()
                .filter(|(u, v)| u < v)
                .map(|&(u, v)| [label(u), label(v)])
                .collect(),
            inter_edges: self
                .inter
                .iter()
                .map(|&(u, v)| [label(u), label(v)])
                .collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// One past the largest node id ever issued. Removal keeps ids stable,
    /// so per-node tables sized by this can be shared with subgraphs.
    pub fn id_bound(&self) -> usize {
        self.labels.len()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<NodeId>] {
        &self.layers
    }

    /// Surviving nodes in layer-major input order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.layers.iter().flatten().copied()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.layer_of.get(v.0).is_some_and(Option::is_some)
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels_of<'a>(&'a self, ids: impl IntoIterator<Item = &'a NodeId>) -> Vec<String> {
        ids.into_iter().map(|&v| self.labels[v.0].clone()).collect()
    }

    /// Id of a surviving node with the given label.
    pub fn id(&self, label: &str) -> Result<NodeId, GraphError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(NodeId)
            .filter(|&v| self.contains(v))
            .ok_or_else(|| GraphError::UnknownNode(label.to_string()))
    }

    pub fn ids<S: AsRef<str>>(&self, labels: &[S]) -> Result<BTreeSet<NodeId>, GraphError> {
        labels.iter().map(|l| self.id(l.as_ref())).collect()
    }

    pub fn layer_of(&self, v: NodeId) -> Result<usize, GraphError> {
        self.layer_of
            .get(v.0)
            .copied()
            .flatten()
            .ok_or_else(|| self.unknown(v))
    }

    /// The single first-layer node, if the first layer is a singleton.
    pub fn leader(&self) -> Option<NodeId> {
        match self.layers.first() {
            Some(l) if l.len() == 1 => Some(l[0]),
            _ => None,
        }
    }

    pub fn intra_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.intra
            .range((v, NodeId(0))..=(v, NodeId(usize::MAX)))
            .map(|&(_, w)| w)
    }

    pub fn intra_degree(&self, v: NodeId) -> usize {
        self.intra_neighbors(v).count()
    }

    /// Directed intra-layer edges (each undirected edge appears twice).
    pub fn intra_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.intra.iter().copied()
    }

    pub fn inter_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.inter.iter().copied()
    }

    /// Neighbours of `v` in the preceding layer.
    pub fn from_above_neighbors(&self, v: NodeId) -> Result<BTreeSet<NodeId>, GraphError> {
        self.layer_of(v)?;
        Ok(self
            .inter
            .iter()
            .filter(|&&(_, dst)| dst == v)
            .map(|&(src, _)| src)
            .collect())
    }

    pub fn from_above_degree(&self, v: NodeId) -> Result<usize, GraphError> {
        Ok(self.from_above_neighbors(v)?.len())
    }

    /// From-above degree of every node, indexed by node id (zero for removed ids).
    pub fn from_above_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.labels.len()];
        for &(_, dst) in &self.inter {
            deg[dst.0] += 1;
        }
        deg
    }

    /// Non-leader nodes with no neighbour in the preceding layer.
    pub fn zero_from_above_nodes(&self) -> Vec<NodeId> {
        let deg = self.from_above_degrees();
        self.layers
            .iter()
            .skip(1)
            .flatten()
            .copied()
            .filter(|v| deg[v.0] == 0)
            .collect()
    }

    /// Every edge is intra-layer or points to the next layer, and intra
    /// edges are symmetric.
    pub fn layer_rule_holds(&self) -> bool {
        let layer = |v: NodeId| self.layer_of.get(v.0).copied().flatten();
        self.intra.iter().all(|&(u, v)| {
            layer(u).is_some() && layer(u) == layer(v) && self.intra.contains(&(v, u))
        }) && self.inter.iter().all(|&(u, v)| match (layer(u), layer(v)) {
            (Some(a), Some(b)) => b == a + 1,
            _ => false,
        })
    }

    /// Connected components of one layer under intra-layer edges.
    ///
    /// Components are ordered by first appearance in the layer. A path
    /// component is listed end to end starting from the end that appears
    /// first; other components are listed in breadth-first order.
    pub fn layer_components(&self, layer: usize) -> Vec<Vec<NodeId>> {
        let nodes = &self.layers[layer];
        let rank: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in nodes {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for w in self.intra_neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                    }
                }
            }
            let edges: usize = comp.iter().map(|&v| self.intra_degree(v)).sum::<usize>() / 2;
            let is_path =
                edges + 1 == comp.len() && comp.iter().all(|&v| self.intra_degree(v) <= 2);
            if is_path && comp.len() > 1 {
                let first_end = comp
                    .iter()
                    .copied()
                    .filter(|&v| self.intra_degree(v) == 1)
                    .min_by_key(|v| rank[v])
                    .unwrap();
                comp = self.walk_path(first_end, comp.len());
            }
            out.push(comp);
        }
        out
    }

    fn walk_path(&self, start: NodeId, len: usize) -> Vec<NodeId> {
        let mut path = Vec::with_capacity(len);
        let mut prev = None;
        let mut cur = start;
        loop {
            path.push(cur);
            let next = self.intra_neighbors(cur).find(|&w| Some(w) != prev);
            match next {
                Some(w) if path.len() < len => {
                    prev = Some(cur);
                    cur = w;
                }
                _ => break,
            }
        }
        path
    }

    /// Checks the layered-path conditions: a singleton first layer and
    /// every layer a disjoint union of paths.
    pub fn validate_layered_path(&self) -> Result<PathLayerDecomposition, GraphError> {
        let first = self.layers.first().ok_or(GraphError::NoLayers)?;
        if first.len() != 1 {
            return Err(GraphError::LeaderNotSingleton(first.len()));
        }
        let mut layers = Vec::with_capacity(self.layers.len());
        for li in 0..self.layers.len() {
            let comps = self.layer_components(li);
            for comp in &comps {
                if let Some(&v) = comp.iter().find(|&&v| self.intra_degree(v) >= 3) {
                    return Err(GraphError::NotPathUnion {
                        layer: li + 1,
                        reason: format!(
                            "node `{}` has {} intra-layer neighbours",
                            self.label(v),
                            self.intra_degree(v)
                        ),
                    });
                }
                let edges: usize = comp.iter().map(|&v| self.intra_degree(v)).sum::<usize>() / 2;
                if edges + 1 != comp.len() {
                    return Err(GraphError::NotPathUnion {
                        layer: li + 1,
                        reason: format!(
                            "component containing `{}` has a cycle",
                            self.label(comp[0])
                        ),
                    });
                }
            }
            layers.push(comps);
        }
        Ok(PathLayerDecomposition { layers })
    }

    /// Overlap condition: along every intra-layer edge the from-above
    /// neighbourhoods differ by at most one node in each direction.
    pub fn check_overlap_condition(&self) -> OverlapReport {
        let mut above: HashMap<NodeId, BTreeSet<NodeId>> = HashMap::new();
        for &(src, dst) in &self.inter {
            above.entry(dst).or_default().insert(src);
        }
        let empty = BTreeSet::new();
        let mut violations = Vec::new();
        for &(u, v) in self.intra.iter().filter(|(u, v)| u < v) {
            let nu = above.get(&u).unwrap_or(&empty);
            let nv = above.get(&v).unwrap_or(&empty);
            let uv: Vec<NodeId> = nu.difference(nv).copied().collect();
            let vu: Vec<NodeId> = nv.difference(nu).copied().collect();
            if uv.len() > 1 || vu.len() > 1 {
                violations.push(OverlapViolation {
                    edge: (self.label(u).to_string(), self.label(v).to_string()),
                    first_minus_second: self.labels_of(&uv),
                    second_minus_first: self.labels_of(&vu),
                });
            }
        }
        OverlapReport {
            holds: violations.is_empty(),
            violations,
        }
    }

    /// Induced subgraph on the nodes not in `removed`.
    ///
    /// Layers that lose all their nodes are kept (empty) so no edge ever
    /// skips a layer. First-layer nodes cannot be removed.
    pub fn remove_nodes(&self, removed: &BTreeSet<NodeId>) -> Result<LayeredGraph, GraphError> {
        for &v in removed {
            if self.layer_of(v)? == 0 {
                return Err(GraphError::LeaderRemoval(self.label(v).to_string()));
            }
        }
        if removed.is_empty() {
            return Ok(self.clone());
        }
        let mut layer_of = self.layer_of.clone();
        for &v in removed {
            layer_of[v.0] = None;
        }
        let alive = |(u, v): &(NodeId, NodeId)| !removed.contains(u) && !removed.contains(v);
        let g = LayeredGraph {
            labels: self.labels.clone(),
            layer_of,
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().copied().filter(|v| !removed.contains(v)).collect())
                .collect(),
            intra: self.intra.iter().copied().filter(alive).collect(),
            inter: self.inter.iter().copied().filter(alive).collect(),
        };
        debug_assert!(g.layer_rule_holds());
        Ok(g)
    }

    /// Removes nodes by label.
    pub fn remove_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<LayeredGraph, GraphError> {
        self.remove_nodes(&self.ids(labels)?)
    }

    /// Node order used for matrices: layer-major, components in layer order,
    /// path order within a component.
    pub fn matrix_order(&self) -> Vec<NodeId> {
        (0..self.layers.len())
            .flat_map(|li| self.layer_components(li).into_iter().flatten())
            .collect()
    }

    /// The whole graph as a unit-weight digraph in [`Self::matrix_order`].
    pub fn to_digraph(&self) -> (WeightedDigraph, Vec<NodeId>) {
        let order = self.matrix_order();
        let g = self.induced_digraph_with(&order, true);
        (g, order)
    }

    /// Unit-weight digraph induced on `nodes` by intra-layer edges only.
    pub fn induced_digraph(&self, nodes: &[NodeId]) -> WeightedDigraph {
        self.induced_digraph_with(nodes, false)
    }

    fn induced_digraph_with(&self, nodes: &[NodeId], with_inter: bool) -> WeightedDigraph {
        let pos: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = WeightedDigraph::new(nodes.iter().map(|&v| self.label(v).to_string()))
            .expect("labels are unique");
        let edges = self.intra.iter().chain(
            if with_inter { Some(&self.inter) } else { None }
                .into_iter()
                .flatten(),
        );
        for (u, v) in edges {
            if let (Some(&a), Some(&b)) = (pos.get(u), pos.get(v)) {
                g.add_edge(a, b, 1.0).expect("edges are valid");
            }
        }
        g
    }

    /// Cone over `nodes` (typically one layer component) with apex weights `f`.
    pub fn cone_with(
        &self,
        nodes: &[NodeId],
        f: impl Fn(NodeId) -> f64,
    ) -> Result<ConeGraph, GraphError> {
        let base = self.induced_digraph(nodes);
        let weights: Vec<f64> = nodes.iter().map(|&v| f(v)).collect();
        ConeGraph::new(&base, &weights)
    }

    /// Cone over `nodes` weighted by from-above degree.
    pub fn from_above_cone(&self, nodes: &[NodeId]) -> Result<ConeGraph, GraphError> {
        let deg = self.from_above_degrees();
        self.cone_with(nodes, |v| deg[v.0] as f64)
    }

    fn unknown(&self, v: NodeId) -> GraphError {
        GraphError::UnknownNode(
            self.labels
                .get(v.0)
                .cloned()
                .unwrap_or_else(|| format!("#{}", v.0)),
        )
    }
}
