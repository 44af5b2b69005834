use proptest::prelude::*;

use steinerpow::dp::{recognize_4_steiner, recognize_6_leaf};
use steinerpow::testkit::{random_leaf_instance, random_yes_instance};
use steinerpow::tree::{verify_leaf_root, verify_root};
use steinerpow::{Graph, SteinerTree};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_formats_round_trip(n_real in 1usize..20, n_steiner in 0usize..20, seed in any::<u64>()) {
        let (g, t) = random_yes_instance(4, n_real, n_steiner, seed);
        let gt = g.to_edge_list();
        prop_assert_eq!(Graph::parse_edge_list(&gt).unwrap().to_edge_list(), gt);
        let tt = t.to_text();
        prop_assert_eq!(SteinerTree::parse(&tt).unwrap().to_text(), tt);
    }

    #[test]
    fn tree_powers_are_accepted(n_real in 1usize..25, n_steiner in 0usize..25, seed in any::<u64>()) {
        let (g, _) = random_yes_instance(4, n_real, n_steiner, seed);
        let t = recognize_4_steiner(&g);
        prop_assert!(t.is_ok(), "{:?}", g.edges());
        prop_assert!(verify_root(&t.unwrap(), &g, 4));
    }

    #[test]
    fn leaf_powers_are_accepted(leaves in 1usize..20, internal in 1usize..12, seed in any::<u64>()) {
        let (g, _) = random_leaf_instance(6, leaves, internal, seed);
        let t = recognize_6_leaf(&g);
        prop_assert!(t.is_ok(), "{:?}", g.edges());
        prop_assert!(verify_leaf_root(&t.unwrap(), &g, 6));
    }
}
