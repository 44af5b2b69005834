use steinerpow::dp::{recognize_4_steiner, witness_invariants};
use steinerpow::testkit::random_yes_instance;
use steinerpow::tree::verify_root;
use steinerpow::{Graph, SteinerTree};

const GRAPH: &str = include_str!("fixtures/yes_k4_r8_s6_seed1.graph");
const TREE: &str = include_str!("fixtures/yes_k4_r8_s6_seed1.tree");

#[test]
fn generator_is_frozen() {
    let (g, t) = random_yes_instance(4, 8, 6, 1);
    assert_eq!(g.to_edge_list(), GRAPH);
    assert_eq!(t.to_text(), TREE);
}

#[test]
fn fixture_pair_verifies_and_is_recognized() {
    let g = Graph::parse_edge_list(GRAPH).unwrap();
    let t = SteinerTree::parse(TREE).unwrap();
    assert!(verify_root(&t, &g, 4));
    let found = recognize_4_steiner(&g).unwrap();
    assert!(verify_root(&found, &g, 4));
    witness_invariants(&found, &g).unwrap();
}
