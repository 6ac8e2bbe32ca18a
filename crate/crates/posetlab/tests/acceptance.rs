//! Acceptance suite: one test per criterion, each printing a verdict line.
//! Every tolerance here is exact (integer or rational equality); the timed
//! criteria assert their wall-clock budget as well.
//!
//! Run with `cargo test -p posetlab --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use num::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use posetlab::convexity::{
    diameter, encode_interval, encode_interval_from_extensions, height, interval_extensions,
    inversions_within, is_geodetically_convex, poset_dimension, reconstruct_poset,
    ConvexityReport,
};
use posetlab::enumerations::{adjacency, all_enumerations, is_between, Enumeration};
use posetlab::extensions::{linear_extensions, EnumSet};
use posetlab::geometry::{
    cone_of, cone_to_topology, conic_decomposition, evaluate_decomposition, ConeSampler,
    ConicGenerator, RationalVector,
};
use posetlab::relations::ElementSet;
use posetlab::topology::{
    count_extensions, distinguishes_points, down_sets, is_topology, specialization_preposet,
    width, SetFamily,
};

fn verdict(criterion: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(limit) = budget {
        assert!(
            elapsed < limit,
            "criterion {criterion} exceeded its {limit:?} budget: {elapsed:?}"
        );
    }
    println!("criterion {criterion}: PASS ({elapsed:.2?})");
}

#[test]
fn criterion_1_example_reproduction() {
    let started = Instant::now();
    let p = example_poset();
    let full = p.full_relation();

    let by_oracle = filter_extensions_oracle(&full);
    assert_eq!(by_oracle.len(), 48, "oracle count of extensions");
    let exts = linear_extensions(&full);
    assert_eq!(exts, by_oracle);

    assert_eq!(height(&exts), 9);
    assert_eq!(diameter(&exts), 8);
    assert_eq!(poset_dimension(&p, 3), Some(3));
    assert_eq!(width(&p), 3);
    assert_eq!(reconstruct_poset(&exts).unwrap(), p);
    assert_eq!(count_extensions(&p), BigUint::from(48u32));

    verdict(
        "1 (six-element example: 48 extensions, height 9, diameter 8, dimension 3, width 3, reconstruction)",
        started,
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_2_characterization_exhaustive_n3() {
    let started = Instant::now();
    let b = base_n(3);
    let graph = PermGraph::new(&b);
    let dist = graph.dist_matrix();
    let mut convex_nonempty = 0;
    let subsets = all_enum_subsets(&b);
    assert_eq!(subsets.len(), 64);
    for s in subsets {
        let by_fixpoint = is_geodetically_convex(&s).is_convex();
        let by_geodesics = graph.convex_oracle(&s, &dist);
        assert_eq!(by_fixpoint, by_geodesics, "disagreement on {s:?}");
        if by_fixpoint && !s.is_empty() {
            convex_nonempty += 1;
        }
    }
    assert_eq!(convex_nonempty, 19);
    assert_eq!(all_posets(&b).len(), 19, "independent labeled-poset count");

    verdict(
        "2 (n=3: fixpoint convexity = geodesic convexity on all 64 subsets; 19 convex non-empty sets)",
        started,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_3_extension_sets_n4() {
    let started = Instant::now();
    let b = base_n(4);
    let posets = all_posets(&b);
    assert_eq!(posets.len(), 219);
    for p in &posets {
        let exts = linear_extensions(&p.full_relation());
        match is_geodetically_convex(&exts) {
            ConvexityReport::Convex(recovered) => assert_eq!(&recovered, p),
            other => panic!("L(P) not convex: {other:?}"),
        }
        assert_eq!(&reconstruct_poset(&exts).unwrap(), p);
        assert_eq!(
            p.strict_pair_count() + inversions_within(&exts).len(),
            6,
            "height law"
        );
        assert_eq!(diameter(&exts) as i64, height(&exts), "diameter = height at n=4");
        assert_eq!(
            posetlab::convexity::covering_of(&exts),
            p.cover_relation(),
            "boundary edges are the covering pairs"
        );
    }

    verdict(
        "3 (n=4, 219 posets: convexity, reconstruction, height law, diameter=height, Cov=covers)",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_4_counting_equivalence() {
    let started = Instant::now();
    let b4 = base_n(4);
    for p in all_posets(&b4) {
        assert_eq!(
            count_extensions(&p),
            BigUint::from(linear_extensions(&p.full_relation()).len())
        );
    }
    let b5 = base_n(5);
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for _ in 0..500 {
        let p = random_poset(&b5, &mut rng, 0.3);
        assert_eq!(
            count_extensions(&p),
            BigUint::from(linear_extensions(&p.full_relation()).len())
        );
    }
    let b6 = base_n(6);
    for _ in 0..500 {
        let p = random_poset(&b6, &mut rng, 0.3);
        let by_filter = filter_extensions_oracle(&p.full_relation()).len();
        assert_eq!(count_extensions(&p), BigUint::from(by_filter));
    }

    verdict(
        "4 (counting = generation on 219 n=4 posets, 500 random n=5, 500 random n=6 vs filter oracle)",
        started,
        None,
    );
}

#[test]
fn criterion_5_birkhoff_round_trips() {
    let started = Instant::now();
    for n in 1..=4 {
        let b = base_n(n);
        for q in all_preposets(&b) {
            let family = down_sets(&q.as_relation()).unwrap();
            assert_eq!(specialization_preposet(&family).unwrap(), q);
            assert_eq!(
                distinguishes_points(&family),
                q.as_relation().validate_poset().is_ok(),
                "separation characterizes posets"
            );
        }
        for family in all_topologies(&b) {
            let q = specialization_preposet(&family).unwrap();
            assert_eq!(down_sets(&q.as_relation()).unwrap(), family);
        }
    }

    verdict(
        "5 (Birkhoff round-trips and point separation, exhaustive n ≤ 4)",
        started,
        None,
    );
}

/// Every topology over the base, by filtering every family of subsets.
fn all_topologies(b: &ElementSet) -> Vec<SetFamily> {
    let n = b.n();
    let subsets: Vec<Vec<String>> = (0u64..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|&u| mask & (1 << u) != 0)
                .map(|u| b.name(u).to_string())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for family_mask in 0u32..(1 << subsets.len()) {
        let chosen = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| family_mask & (1 << i) != 0)
            .map(|(_, s)| s.clone());
        let family = SetFamily::new(b.clone(), chosen).unwrap();
        if is_topology(&family) {
            out.push(family);
        }
    }
    out
}

#[test]
fn criterion_6_interval_encoding() {
    let started = Instant::now();
    let b = base_n(4);
    let references: Vec<Enumeration> = all_enumerations(&b).collect();
    assert_eq!(references.len(), 24);
    let posets = all_posets(&b);
    assert_eq!(posets.len(), 219);
    for p in &posets {
        let exts = linear_extensions(&p.full_relation());
        for reference in &references {
            let code = encode_interval(p, reference);
            assert_eq!(interval_extensions(&code), exts, "decode(encode) = L(P)");
            assert_eq!(
                encode_interval_from_extensions(&exts, reference),
                code,
                "the two minimal-interval formulas coincide"
            );
        }
    }

    verdict(
        "6 (interval coding: 219 posets × 24 references, decode∘encode identity, formulas agree)",
        started,
        None,
    );
}

#[test]
fn criterion_7_geometry_exact() {
    let started = Instant::now();

    // conic decomposition on seeded random cones at n = 5
    let b5 = base_n(5);
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for _ in 0..10 {
        let q = random_preposet(&b5, &mut rng, 0.25);
        let relation = q.as_relation();
        let family = down_sets(&relation).unwrap();
        let sampler = ConeSampler::new(&cone_of(&relation)).unwrap();
        for _ in 0..200 {
            let x = sampler.sample(&mut rng);
            let terms = conic_decomposition(&x, &q).unwrap();
            assert_eq!(
                evaluate_decomposition(&b5, &terms).unwrap(),
                x,
                "coordinate-exact reconstruction"
            );
            for (generator, coefficient) in &terms {
                if let ConicGenerator::DownSet(names) = generator {
                    assert!(family.contains(names));
                    assert!(coefficient >= &num::BigRational::from_integer(0.into()));
                }
            }
        }
    }

    // cone→topology transfer, exhaustive n ≤ 4
    for n in 1..=4 {
        let b = base_n(n);
        for q in all_preposets(&b) {
            let relation = q.as_relation();
            assert_eq!(
                cone_to_topology(&cone_of(&relation)),
                down_sets(&relation).unwrap()
            );
        }
    }

    // edge parallelism at n = 4: adjacent rank vectors differ by ±(χ_v − χ_u)
    let b4 = base_n(4);
    for e in all_enumerations(&b4) {
        for i in 1..4 {
            let neighbor = e.swap_at(i);
            let label = adjacency(&e, &neighbor).unwrap();
            let (lo, hi) = label.names(&b4);
            let lo_first = e.position(lo).unwrap() < e.position(hi).unwrap();
            let r1 = RationalVector::rank_vector(&e);
            let r2 = RationalVector::rank_vector(&neighbor);
            for name in b4.names() {
                let delta = r1.coord(name).unwrap() - r2.coord(name).unwrap();
                let expected: i64 = if name == lo {
                    if lo_first { -1 } else { 1 }
                } else if name == hi {
                    if lo_first { 1 } else { -1 }
                } else {
                    0
                };
                assert_eq!(delta, num::BigRational::from_integer(expected.into()));
            }
        }
    }

    verdict(
        "7 (exact geometry: 200 decompositions × 10 cones, cone↔topology n ≤ 4, edge parallelism n=4)",
        started,
        None,
    );
}

#[test]
fn criterion_8_dimension_bounds() {
    let started = Instant::now();

    let b4 = base_n(4);
    for p in all_posets(&b4) {
        let dim = poset_dimension(&p, 4).expect("n=4 posets have dimension ≤ 2");
        assert!(dim <= 2);
    }

    let b6 = base_n(6);
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    for _ in 0..200 {
        let p = random_poset(&b6, &mut rng, 0.3);
        let dim = poset_dimension(&p, 6).expect("dimension is at most n");
        assert!(dim <= 3, "Hiraguchi bound max(2, n/2) at n=6");
    }

    // betweenness sets reconstruct to the toset intersection
    let nodes: Vec<Enumeration> = all_enumerations(&b4).collect();
    for a in &nodes {
        for z in &nodes {
            if a == z {
                continue;
            }
            let between: Vec<Enumeration> = nodes
                .iter()
                .filter(|m| is_between(a, m, z))
                .cloned()
                .collect();
            let s = EnumSet::new(b4.clone(), between).unwrap();
            let p = reconstruct_poset(&s).expect("between-sets are convex");
            let meet = a
                .toset()
                .as_relation()
                .intersection(z.toset().as_relation())
                .unwrap();
            assert_eq!(p.full_relation(), meet);
            assert!(poset_dimension(&p, 2).is_some(), "a 2-realizer exists");
        }
    }

    verdict(
        "8 (dimension ≤ max(2, n/2) on 219 n=4 posets and 200 random n=6; between-sets are 2-realizable meets)",
        started,
        Some(Duration::from_secs(120)),
    );
}

#[test]
fn criterion_9_interval_coding_bound() {
    let started = Instant::now();
    let expected = [1usize, 3, 19, 219];
    for (ix, &count) in expected.iter().enumerate() {
        let n = ix + 1;
        let brute = all_posets(&base_n(n)).len();
        assert_eq!(brute, count, "brute-forced labeled poset count at n={n}");
        let budget = 3usize.pow((n * (n - 1) / 2) as u32);
        assert!(brute <= budget, "n={n}: {brute} > 3^C(n,2) = {budget}");
    }

    verdict(
        "9 (labeled-poset counts 1, 3, 19, 219 within the 3^C(n,2) coding bound)",
        started,
        None,
    );
}
