use serde::Serialize;

use super::AnalysisError;
use crate::graph::LayeredGraph;
use crate::spectral::lambda2_layered;

/// Slack allowed below α when checking the lower bound.
pub const ALPHA_SLACK: f64 = 1e-8;
/// Slack allowed outside `[0, 1]` when checking the interval.
pub const INTERVAL_SLACK: f64 = 1e-9;

/// Outcome of checking "from-above degree ≥ α everywhere ⟹ λ₂ ≥ α".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaBoundReport {
    pub alpha: f64,
    /// Minimum from-above degree over non-leader nodes (`None` if there are none).
    pub min_from_above_degree: Option<usize>,
    /// λ₂ of the first layer when it is not a singleton.
    pub first_layer_lambda2: Option<f64>,
    pub hypothesis_holds: bool,
    pub lambda2: Option<f64>,
    /// `Some(λ₂ ≥ α - slack)` when the hypothesis holds and λ₂ is defined.
    pub bound_holds: Option<bool>,
}

impl AlphaBoundReport {
    pub fn violated(&self) -> bool {
        self.bound_holds == Some(false)
    }
}

pub fn alpha_bound_check(g: &LayeredGraph, alpha: f64) -> Result<AlphaBoundReport, AnalysisError> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(AnalysisError::InvalidAlpha(alpha));
    }
    let deg = g.from_above_degrees();
    let min_from_above_degree = g.layers().iter().skip(1).flatten().map(|v| deg[v.0]).min();
    let report = lambda2_layered(g)?;
    let first_layer_lambda2 = report
        .contributions
        .iter()
        .find(|c| c.layer == 1)
        .map(|c| c.value);
    let first_ok = match first_layer_lambda2 {
        None => true,
        Some(l) => l >= alpha - ALPHA_SLACK,
    };
    let degrees_ok = min_from_above_degree.is_none_or(|d| d as f64 >= alpha);
    let hypothesis_holds = alpha == 0.0 || (first_ok && degrees_ok);
    let bound_holds = match (hypothesis_holds, report.lambda2) {
        (true, Some(l)) => Some(l >= alpha - ALPHA_SLACK),
        _ => None,
    };
    Ok(AlphaBoundReport {
        alpha,
        min_from_above_degree,
        first_layer_lambda2,
        hypothesis_holds,
        lambda2: report.lambda2,
        bound_holds,
    })
}

/// Whether λ₂ of a layered path graph lies in `[0, 1]`. Vacuously true
/// for a single node.
pub fn interval_check(g: &LayeredGraph) -> Result<bool, AnalysisError> {
    g.validate_layered_path()?;
    Ok(match lambda2_layered(g)?.lambda2 {
        Some(l) => (-INTERVAL_SLACK..=1.0 + INTERVAL_SLACK).contains(&l),
        None => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn alpha_one_on_gtri() {
        let r = alpha_bound_check(&fixtures::g_tri(), 1.0).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.bound_holds, Some(true));
        assert!((r.lambda2.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn alpha_hypothesis_fails_after_removal() {
        let g = fixtures::g_tri().remove_labels(&["v2"]).unwrap();
        let r = alpha_bound_check(&g, 1.0).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.min_from_above_degree, Some(0));
        assert_eq!(r.bound_holds, None);
    }

    #[test]
    fn alpha_zero_is_trivial() {
        let g = fixtures::g_sq1().remove_labels(&["v2", "v3"]).unwrap();
        let r = alpha_bound_check(&g, 0.0).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.bound_holds, Some(true));
        assert!(alpha_bound_check(&g, -1.0).is_err());
    }

    #[test]
    fn interval_on_small_graphs() {
        let g = LayeredGraph::build(&[&["l"], &["f"]], &[], &[("l", "f")]).unwrap();
        assert!(interval_check(&g).unwrap());
        assert!((lambda2_layered(&g).unwrap().lambda2.unwrap() - 1.0).abs() < 1e-9);
        for f in fixtures::Fixture::ALL {
            for row in f.table() {
                assert!(interval_check(&f.graph().remove_labels(&row.removed).unwrap()).unwrap());
            }
        }
    }
}
