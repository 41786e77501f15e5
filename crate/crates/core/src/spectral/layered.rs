//! λ₂ of a layered graph via the per-layer cone decomposition, and a dense
//! cross-check that ignores the layer structure.

use serde::Serialize;

use super::{
    dense_real_eigenvalues, grounded, laplacian, symmetric_eigenvalue,
    symmetric_smallest_eigenvalue, tridiagonal_smallest_eig, SpectralError, TridiagonalMatrix,
    BISECTION_TOL,
};
use crate::format::sig12;
use crate::graph::{GraphError, LayeredGraph, NodeId};

/// Imaginary parts above this make the dense oracle reject a spectrum.
pub const REALNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contribution {
    /// 1-based layer number.
    pub layer: usize,
    pub component: Vec<String>,
    #[serde(serialize_with = "sig12")]
    pub value: f64,
}

/// λ₂ together with the block each candidate value came from.
///
/// For the first layer (only present when it is not a singleton) the value
/// is λ₂ of that layer's Laplacian; for later layers it is the smallest
/// eigenvalue of the grounded cone of one connected component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    #[serde(serialize_with = "crate::format::opt_sig12")]
    pub lambda2: Option<f64>,
    #[serde(serialize_with = "serialize_argmin")]
    pub argmin: Option<Contribution>,
    pub contributions: Vec<Contribution>,
}

fn serialize_argmin<S: serde::Serializer>(
    c: &Option<Contribution>,
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Argmin<'a> {
        layer: usize,
        component: &'a [String],
    }
    c.as_ref()
        .map(|c| Argmin {
            layer: c.layer,
            component: &c.component,
        })
        .serialize(s)
}

impl SpectralReport {
    /// JSON object with floats at 12 significant digits.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Grounded cone of `component` under from-above degree: the cone Laplacian
/// with the apex row and column removed.
pub fn grounded_cone(
    g: &LayeredGraph,
    component: &[NodeId],
) -> Result<super::SquareMatrix, SpectralError> {
    let cone = g.from_above_cone(component)?;
    grounded(&laplacian(cone.digraph()), cone.apex())
}

fn component_value(g: &LayeredGraph, component: &[NodeId]) -> Result<f64, SpectralError> {
    let m = grounded_cone(g, component)?;
    match TridiagonalMatrix::from_dense(&m) {
        Some(t) => tridiagonal_smallest_eig(&t, BISECTION_TOL),
        None => symmetric_smallest_eigenvalue(&m, BISECTION_TOL),
    }
}

/// λ₂(L_G) as the minimum over the per-block values.
///
/// Path components go through the tridiagonal Sturm kernel; other
/// components (allowed in general layered graphs) through the dense
/// symmetric route. Graphs with a single node have no λ₂.
pub fn lambda2_layered(g: &LayeredGraph) -> Result<SpectralReport, SpectralError> {
    let first = g.layers().first().ok_or(GraphError::NoLayers)?;
    if first.is_empty() {
        return Err(GraphError::LeaderNotSingleton(0).into());
    }
    let mut contributions = Vec::new();
    if first.len() > 1 {
        let base = g.induced_digraph(first);
        let value = symmetric_eigenvalue(&laplacian(&base), 1, BISECTION_TOL)?;
        contributions.push(Contribution {
            layer: 1,
            component: g.labels_of(first),
            value,
        });
    }
    for li in 1..g.layer_count() {
        for component in g.layer_components(li) {
            let value = component_value(g, &component)?;
            contributions.push(Contribution {
                layer: li + 1,
                component: g.labels_of(&component),
                value,
            });
        }
    }
    let argmin = contributions
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .cloned();
    Ok(SpectralReport {
        lambda2: argmin.as_ref().map(|c| c.value),
        argmin,
        contributions,
    })
}

/// Second-smallest eigenvalue of the full Laplacian from the dense solver.
pub fn lambda2_oracle(g: &LayeredGraph) -> Result<f64, SpectralError> {
    let (digraph, _) = g.to_digraph();
    if digraph.len() < 2 {
        return Err(SpectralError::TooSmall {
            n: digraph.len(),
            min: 2,
        });
    }
    let eig = dense_real_eigenvalues(&laplacian(&digraph), REALNESS_TOL)?;
    Ok(eig[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn gtri_is_one() {
        let g = fixtures::g_tri();
        let r = lambda2_layered(&g).unwrap();
        assert!((r.lambda2.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r.contributions.len(), 3);
        assert!((lambda2_oracle(&g).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reference_degraded_values() {
        let g = fixtures::g_tri()
            .remove_labels(&["v4", "v5", "v10"])
            .unwrap();
        let r = lambda2_layered(&g).unwrap();
        assert!((r.lambda2.unwrap() - 0.1981).abs() < 5e-5);
        let argmin = r.argmin.unwrap();
        assert_eq!(argmin.layer, 4);
        assert_eq!(argmin.component, ["v7", "v8", "v9"]);

        let g = fixtures::g_sq1()
            .remove_labels(&["v2", "v3", "v4", "v5"])
            .unwrap();
        assert!((lambda2_layered(&g).unwrap().lambda2.unwrap() - 0.0810).abs() < 5e-5);

        let g = fixtures::g_sq2()
            .remove_labels(&["v2", "v4", "v6"])
            .unwrap();
        assert!((lambda2_oracle(&g).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn disconnected_graph_has_zero() {
        // second layer receives nothing from the leader
        let g = LayeredGraph::build(&[&["r"], &["a", "b"]], &[("a", "b")], &[]).unwrap();
        assert!(lambda2_oracle(&g).unwrap().abs() < 1e-9);
        assert!(lambda2_layered(&g).unwrap().lambda2.unwrap().abs() < 1e-9);
    }

    #[test]
    fn single_node_has_no_lambda2() {
        let g = LayeredGraph::build(&[&["r"]], &[], &[]).unwrap();
        let r = lambda2_layered(&g).unwrap();
        assert_eq!(r.lambda2, None);
        assert!(r.argmin.is_none());
        assert!(lambda2_oracle(&g).is_err());
    }

    #[test]
    fn non_singleton_first_layer_term() {
        // first layer K3 (λ₂ = 3), every follower hears from two of them
        let g = LayeredGraph::build(
            &[&["a", "b", "c"], &["x", "y"]],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("x", "y")],
            &[("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")],
        )
        .unwrap();
        let r = lambda2_layered(&g).unwrap();
        assert_eq!(r.contributions[0].layer, 1);
        assert!((r.contributions[0].value - 3.0).abs() < 1e-9);
        assert!((r.lambda2.unwrap() - lambda2_oracle(&g).unwrap()).abs() < 1e-8);
        assert!((r.lambda2.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn grounded_cone_of_path_is_tridiagonal() {
        for f in fixtures::Fixture::ALL {
            let g = f.graph();
            let deg = g.from_above_degrees();
            for (_, path) in g
                .validate_layered_path()
                .unwrap()
                .paths()
                .filter(|(l, _)| *l > 0)
            {
                let t = TridiagonalMatrix::from_dense(&grounded_cone(&g, path).unwrap())
                    .expect("tridiagonal");
                let want: Vec<f64> = path
                    .iter()
                    .map(|&v| (deg[v.0] + g.intra_degree(v)) as f64)
                    .collect();
                assert_eq!(t.diag(), want.as_slice());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = lambda2_layered(&fixtures::g_tri().remove_labels(&["v2"]).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!((v["lambda2"].as_f64().unwrap() - 0.4679).abs() < 5e-5);
        assert_eq!(v["argmin"]["layer"], 3);
        assert_eq!(v["contributions"].as_array().unwrap().len(), 3);
    }
}
