use std::collections::BTreeSet;

use proptest::prelude::*;

use layerconn::analysis::{random_layered_path_graph, removable_nodes};
use layerconn::graph::{GraphSpec, LayeredGraph, NodeId};
use layerconn::spectral::{lambda2_layered, lambda2_oracle};

fn graph_and_subsets() -> impl Strategy<Value = (LayeredGraph, BTreeSet<NodeId>, BTreeSet<NodeId>)>
{
    (any::<u64>(), 2usize..6, any::<u64>()).prop_map(|(seed, layers, pick)| {
        let g = random_layered_path_graph(seed, layers, 5);
        let pool = removable_nodes(&g);
        let (mut a, mut b) = (BTreeSet::new(), BTreeSet::new());
        for (i, &v) in pool.iter().enumerate() {
            match (pick >> (2 * (i % 32))) & 3 {
                0 => {
                    a.insert(v);
                }
                1 => {
                    b.insert(v);
                }
                _ => {}
            }
        }
        (g, a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn removal_commutes((g, a, b) in graph_and_subsets()) {
        let ab: BTreeSet<NodeId> = a.union(&b).copied().collect();
        let direct = g.remove_nodes(&ab).unwrap();
        prop_assert_eq!(&g.remove_nodes(&a).unwrap().remove_nodes(&b).unwrap(), &direct);
        prop_assert_eq!(&g.remove_nodes(&b).unwrap().remove_nodes(&a).unwrap(), &direct);
        prop_assert!(direct.validate_layered_path().is_ok());
        prop_assert!(direct.check_overlap_condition().holds);
    }

    #[test]
    fn spec_round_trips((g, a, _) in graph_and_subsets()) {
        let h = g.remove_nodes(&a).unwrap();
        let text = h.to_spec().to_json();
        let back = LayeredGraph::from_spec(&GraphSpec::from_json(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_spec(), h.to_spec());
    }

    #[test]
    fn decomposition_matches_oracle((g, a, _) in graph_and_subsets()) {
        let h = g.remove_nodes(&a).unwrap();
        prop_assume!(h.node_count() >= 2);
        let l = lambda2_layered(&h).unwrap().lambda2.unwrap();
        let o = lambda2_oracle(&h).unwrap();
        prop_assert!((l - o).abs() <= 1e-8, "{} vs {}", l, o);
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&l));
    }
}
