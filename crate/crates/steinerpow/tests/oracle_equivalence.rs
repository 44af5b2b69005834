use steinerpow::dp::{recognize_4_steiner, recognize_6_leaf, witness_invariants};
use steinerpow::testkit::{connected_graphs, oracle_leaf_root, oracle_steiner_root, OracleBudget, OracleOutcome};
use steinerpow::tree::{verify_leaf_root, verify_root};

fn decided(o: OracleOutcome) -> bool {
    match o {
        OracleOutcome::Found(_) => true,
        OracleOutcome::NotFound => false,
        OracleOutcome::Inconclusive => panic!("oracle inconclusive"),
    }
}

#[test]
fn steiner_4_matches_oracle_up_to_6_vertices() {
    let b = OracleBudget::default();
    let mut seen = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            seen += 1;
            let want = decided(oracle_steiner_root(&g, 4, &b));
            let got = recognize_4_steiner(&g);
            assert_eq!(got.is_ok(), want, "n={n} graph {:?}: {:?}", g.edges(), got.as_ref().err());
            if let Ok(t) = got {
                assert!(verify_root(&t, &g, 4));
                witness_invariants(&t, &g).unwrap();
            }
        }
    }
    assert_eq!(seen, 143);
}

#[test]
fn leaf_6_matches_oracle_up_to_6_vertices() {
    let b = OracleBudget::default();
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let want = decided(oracle_leaf_root(&g, 6, &b));
            let got = recognize_6_leaf(&g);
            assert_eq!(got.is_ok(), want, "n={n} graph {:?}: {:?}", g.edges(), got.as_ref().err());
            if let Ok(t) = got {
                assert!(verify_leaf_root(&t, &g, 6));
            }
        }
    }
}
