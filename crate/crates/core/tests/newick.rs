use lexiphy_core::phylo::{emit_newick, parse_newick};
use lexiphy_core::sim::random_tree_with_labels;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn labels() -> impl Strategy<Value = Vec<String>> {
    prop::collection::btree_set("[A-Za-z][A-Za-z0-9 ,:'()_-]{0,6}", 2..12).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn emit_parse_round_trip(labels in labels(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree_with_labels(&labels, 3.0, &mut rng);
        let text = emit_newick(&tree, false);
        let back = parse_newick(&text).unwrap();
        prop_assert_eq!(back.leaf_labels(), tree.leaf_labels());
        prop_assert_eq!(back.topology_key(), tree.topology_key());
        prop_assert_eq!(emit_newick(&back, false), text);
        for (a, b) in tree.postorder().into_iter().zip(back.postorder()) {
            if a != tree.root() {
                prop_assert_eq!(tree.length(a), back.length(b));
            }
        }
    }
}

#[test]
fn comments_and_whitespace() {
    let t = parse_newick("( A:0.1 [note] , ( B:0.2,C:0.3 )0.9:0.4 ) ;").unwrap();
    assert_eq!(t.leaf_labels(), ["A", "B", "C"]);
    assert_eq!(t.topology_key(), parse_newick("(A,(C,B));").unwrap().topology_key());
    assert!(emit_newick(&t, true).contains(")0.9:0.4"));
}

#[test]
fn malformed_inputs_are_rejected() {
    for bad in ["", "(A,B", "(A,B));", "(A:x,B);", "(A,B)C;D", "((A,B);"] {
        assert!(parse_newick(bad).is_err(), "{bad:?}");
    }
}
