use steinerpow::chordal::build_clique_tree;
use steinerpow::cliquetree::{
    build_final_clique_tree, build_flat_clique_tree, flat_property_holds, large_separators_convergent, inner_separators_hold,
};
use steinerpow::testkit::random_strongly_chordal;

#[test]
fn final_and_flat_trees_on_random_graphs() {
    let mut bad = Vec::new();
    for seed in 0..500u64 {
        let n = 1 + (seed as usize * 7) % 30;
        let g = random_strongly_chordal(n, seed);
        let fin = build_final_clique_tree(&g).unwrap();
        let flat = build_flat_clique_tree(&g).unwrap();
        assert!(fin.tree.is_valid() && flat.tree.is_valid());
        assert_eq!(fin.len(), build_clique_tree(&g).unwrap().cliques.len());
        let r = (large_separators_convergent(&fin), inner_separators_hold(&fin), flat_property_holds(&flat));
        if r != (true, true, true) {
            bad.push((seed, r, g.to_edge_list()));
        }
    }
    for b in bad.iter().take(3) {
        eprintln!("seed {} {:?}\n{}", b.0, b.1, b.2);
    }
    assert!(bad.is_empty(), "{} failures", bad.len());
}
