//! The Galois connection against brute-force filters: extension generation,
//! closures, coatoms, faces, and the sandwich descent.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use posetlab::extensions::{
    coatom, enumset_closure, face_dimension, face_enum_set, face_poset, linear_extensions,
    relation_closure, sandwich_step, upper_galois, EnumSet,
};
use posetlab::relations::{Poset, Relation};

#[test]
fn example_poset_has_48_extensions_by_filter() {
    let p = example_poset();
    let filtered = filter_extensions_oracle(&p.full_relation());
    assert_eq!(filtered.len(), 48);
    assert_eq!(linear_extensions(&p.full_relation()), filtered);
}

#[test]
fn generation_matches_filter_on_all_relations_n3() {
    let b = base_n(3);
    for r in all_relations(&b) {
        assert_eq!(
            linear_extensions(&r),
            filter_extensions_oracle(&r),
            "mismatch on {r:?}"
        );
    }
}

#[test]
fn relation_closure_equals_galois_composite_on_all_relations_n3() {
    let b = base_n(3);
    for r in all_relations(&b) {
        let via_galois = upper_galois(&linear_extensions(&r));
        assert_eq!(relation_closure(&r), via_galois, "mismatch on {r:?}");
    }
}

#[test]
fn closure_fixpoints_at_n3_are_the_posets_plus_empty() {
    let b = base_n(3);
    let mut fixpoints = 0;
    for s in all_enum_subsets(&b) {
        if enumset_closure(&s) == s {
            fixpoints += 1;
        }
    }
    assert_eq!(fixpoints, 20, "19 posets plus the empty set");
}

#[test]
fn galois_maps_are_antitone() {
    let b = base_n(3);
    let subsets = all_enum_subsets(&b);
    for s1 in subsets.iter().take(32) {
        for s2 in subsets.iter().take(32) {
            if s1.is_subset_of(s2) {
                assert!(upper_galois(s2).is_subset_of(&upper_galois(s1)));
            }
        }
    }
    for p in all_posets(&b) {
        for q in all_posets(&b) {
            if p.full_relation().is_subset_of(&q.full_relation()) {
                assert!(linear_extensions(&q.full_relation())
                    .is_subset_of(&linear_extensions(&p.full_relation())));
            }
        }
    }
}

#[test]
fn triple_application_identity() {
    let b = base_n(3);
    for s in all_enum_subsets(&b) {
        let once = upper_galois(&s);
        let thrice = upper_galois(&enumset_closure(&s));
        assert_eq!(once, thrice);
    }
}

#[test]
fn poset_to_extensions_is_a_bijection_n4() {
    let b = base_n(4);
    let mut seen = std::collections::BTreeSet::new();
    for p in all_posets(&b) {
        let exts = linear_extensions(&p.full_relation());
        // injective: no two posets share an extension set
        let key: Vec<String> = exts.iter().map(|e| e.record()).collect();
        assert!(seen.insert(key), "two posets share {exts:?}");
        // and the round trip lands back on the poset
        assert_eq!(upper_galois(&exts), p.full_relation());
        assert_eq!(
            linear_extensions(&upper_galois(&exts)),
            exts,
            "closure moved a poset's extension set"
        );
    }
}

#[test]
fn height_law_n4() {
    // compared pairs and inversions within L(P) split the pair budget C(n,2)
    let b = base_n(4);
    for p in all_posets(&b) {
        let exts = linear_extensions(&p.full_relation());
        let inversions = posetlab::convexity::inversions_within(&exts).len();
        assert_eq!(p.strict_pair_count() + inversions, 6);
    }
}

#[test]
fn coatoms_are_half_of_all_enumerations() {
    let b = base_n(4);
    let s = coatom(&b, "b", "d").unwrap();
    assert_eq!(s.len(), 12);
    let via_extensions = linear_extensions(
        &Relation::from_pairs(b.clone(), [("b", "d")])
            .unwrap()
            .with_diagonal(),
    );
    assert_eq!(s, via_extensions);
}

#[test]
fn face_sets_agree_with_face_posets_on_all_partitions_n4() {
    let b = base_n(4);
    let partitions = all_ordered_partitions(&b);
    assert_eq!(partitions.len(), 75);
    for partition in &partitions {
        let face = face_enum_set(partition);
        let expected: usize = partition
            .blocks()
            .iter()
            .map(|block| (1..=block.len()).product::<usize>())
            .product();
        assert_eq!(face.len(), expected);
        assert_eq!(
            linear_extensions(&face_poset(partition).full_relation()),
            face
        );
        assert_eq!(face_dimension(partition), 4 - partition.block_count());
        // face sets are closed in the Galois sense
        assert_eq!(enumset_closure(&face), face);
    }
}

#[test]
fn six_block_product_face() {
    let b = base_n(6);
    let partition = posetlab::extensions::OrderedPartition::new(
        b,
        [vec!["a", "b", "c"], vec!["d", "e", "f"]],
    )
    .unwrap();
    assert_eq!(face_enum_set(&partition).len(), 36);
}

#[test]
fn sandwich_descent_walks_maximal_chains_n4() {
    let b = base_n(4);
    let bottom = Poset::trivial(b.clone());
    for e in posetlab::enumerations::all_enumerations(&b).take(6) {
        let mut current = e.toset().as_relation().validate_poset().unwrap();
        let mut steps = 0;
        while current != bottom {
            current = sandwich_step(&bottom, &current).unwrap();
            steps += 1;
            assert!(bottom.full_relation().is_subset_of(&current.full_relation()));
        }
        assert_eq!(steps, 6, "maximal chains have length C(4,2)");
    }
}

#[test]
fn sandwich_outputs_are_posets_on_random_nested_pairs_n5() {
    let b = base_n(5);
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let mut tried = 0;
    while tried < 100 {
        let small = random_poset(&b, &mut rng, 0.2);
        let big = random_poset(&b, &mut rng, 0.5);
        if !small.full_relation().is_subset_of(&big.full_relation())
            || small == big
        {
            continue;
        }
        tried += 1;
        let step = sandwich_step(&small, &big).unwrap();
        let step_full = step.full_relation();
        assert!(small.full_relation().is_subset_of(&step_full));
        assert!(step_full.is_subset_of(&big.full_relation()));
        assert_eq!(
            big.full_relation().pair_count() - step_full.pair_count(),
            1
        );
        assert!(step_full.validate_poset().is_ok());
    }
}

#[test]
fn example_extension_set_is_the_union_of_four_faces() {
    let p = example_poset();
    let b = p.base().clone();
    let faces = [
        vec![vec!["a", "b", "c"], vec!["d", "e", "f"]],
        vec![vec!["a", "b"], vec!["f"], vec!["c"], vec!["d", "e"]],
        vec![vec!["a", "c"], vec!["e"], vec!["b"], vec!["d", "f"]],
        vec![vec!["b", "c"], vec!["d"], vec!["a"], vec!["e", "f"]],
    ];
    let mut members = Vec::new();
    for blocks in faces {
        let partition = posetlab::extensions::OrderedPartition::new(b.clone(), blocks).unwrap();
        let face = face_enum_set(&partition);
        for e in face.iter() {
            assert!(!members.contains(e), "face sets must be disjoint");
            members.push(e.clone());
        }
    }
    let union = EnumSet::new(b, members).unwrap();
    assert_eq!(union, linear_extensions(&p.full_relation()));
}
