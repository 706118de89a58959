use std::collections::BTreeSet;

use proptest::prelude::*;

use orderforge::dimension::{dim_poset_with, inc_all, rho_with, DEFAULT_BUDGET};
use orderforge::draw::{emit_drawing, DrawOptions};
use orderforge::exposed::ExposedInstance;
use orderforge::generators::{doubly_exposed_family, kelly, random_forest_poset, random_poset};
use orderforge::io;
use orderforge::reductions::{check_min_max, dim_restrict_upset, min_max_reduce, replay_reverses};
use orderforge::{ElemSet, Error, Poset};

fn poset() -> impl Strategy<Value = Poset> {
    (any::<u64>(), 1usize..=9, 0.1f64..0.7).prop_map(|(s, n, p)| random_poset(s, n, p))
}

fn subset(n: usize) -> impl Strategy<Value = ElemSet> {
    proptest::collection::btree_set(0..n, 1..=n)
}

fn drawn() -> impl Strategy<Value = (Poset, orderforge::planar::Embedding)> {
    prop_oneof![
        (3usize..=8).prop_map(|n| kelly(n).unwrap()),
        (any::<u64>(), 2usize..=6).prop_map(|(s, m)| {
            let d = doubly_exposed_family(s, m).unwrap();
            (d.poset, d.embedding)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_a_partial_order(p in poset()) {
        let n = p.len();
        for x in 0..n {
            prop_assert!(!p.lt(x, x));
            for y in 0..n {
                prop_assert!(!(p.lt(x, y) && p.lt(y, x)));
                for z in 0..n {
                    prop_assert!(!(p.lt(x, y) && p.lt(y, z)) || p.lt(x, z));
                }
            }
        }
        for &(x, y) in p.covers() {
            prop_assert!(p.lt(x, y));
            prop_assert!((0..n).all(|z| !(p.lt(x, z) && p.lt(z, y))));
        }
    }

    #[test]
    fn poset_file_round_trip(p in poset()) {
        prop_assert_eq!(io::parse_poset(&io::poset_json(&p)).unwrap(), p);
    }

    #[test]
    fn default_extension_is_linear(p in poset()) {
        prop_assert!(p.is_linear_extension(&p.default_extension()));
    }

    #[test]
    fn realizer_intersects_to_the_order(p in poset()) {
        let r = dim_poset_with(&p, DEFAULT_BUDGET).unwrap();
        prop_assert!(r.realizer.extensions.iter().all(|l| p.is_linear_extension(l)));
        prop_assert!(replay_reverses(&p, &inc_all(&p), r.realizer.extensions.iter()));
        // Hiraguchi: dim <= max(2, n / 2) for n >= 4.
        if p.len() >= 4 {
            prop_assert!(r.d <= (p.len() / 2).max(2));
        }
        if !inc_all(&p).is_empty() {
            let (rho, se) = rho_with(&p, &inc_all(&p), DEFAULT_BUDGET).unwrap();
            prop_assert!(se.verify(&p));
            prop_assert!(rho <= r.d);
        }
    }

    #[test]
    fn forests_have_dimension_at_most_three(s in any::<u64>(), n in 1usize..=12) {
        let p = random_forest_poset(s, n);
        prop_assert!(p.cover_graph().edge_count() < p.len().max(1));
        prop_assert!(dim_poset_with(&p, DEFAULT_BUDGET).unwrap().d <= 3);
    }

    #[test]
    fn min_max_reduction_invariants((p, a, b) in poset().prop_flat_map(|p| { let n = p.len(); (Just(p), subset(n), subset(n)) })) {
        let r = min_max_reduce(&p, &a, &b).unwrap();
        let bad = check_min_max(&p, &a, &b, &r);
        prop_assert!(bad.is_empty(), "{:?}", bad);
        prop_assert!(r.a_prime.iter().all(|&x| r.poset.is_minimal(x)));
        prop_assert!(r.b_prime.iter().all(|&x| r.poset.is_maximal(x)));
    }

    #[test]
    fn upset_restriction_replays((p, a, b) in poset().prop_flat_map(|p| { let n = p.len(); (Just(p), subset(n), subset(n)) })) {
        match dim_restrict_upset(&p, &a, &b, DEFAULT_BUDGET) {
            Ok(r) => {
                prop_assert!(r.replay_ok);
                prop_assert_eq!(r.lhs, r.rhs.max(1));
            }
            Err(Error::PreconditionFailed(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn layering_partitions_and_is_monotone((p, e) in drawn(), keep_mask in any::<u64>()) {
        let g = e.graph();
        let l = e.layering();
        prop_assert!(l.check(g));
        let lv = l.level(g.len());
        prop_assert!((0..l.len()).all(|i| lv.contains(&i)), "every layer is nonempty");
        let keep: BTreeSet<usize> = (0..g.len()).filter(|v| keep_mask >> (v % 64) & 1 == 1).collect();
        if !keep.is_empty() {
            let sub = e.induced(&keep);
            prop_assert!(sub.layering().check(sub.graph()));
            prop_assert!(sub.outerplanarity() <= e.outerplanarity(), "{:?}", p.ids_of(&keep));
        }
    }

    #[test]
    fn embedding_file_round_trip((p, e) in drawn()) {
        let f = io::parse_embedding(&io::embedding_json(&e), p.cover_graph()).unwrap();
        prop_assert_eq!(f, e);
    }

    #[test]
    fn drawing_is_deterministic((_p, e) in drawn()) {
        let a = emit_drawing(&e, &DrawOptions::default()).unwrap();
        let b = emit_drawing(&e.clone(), &DrawOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exposed_predicates_hold(s in any::<u64>(), m in 2usize..=6) {
        let d = doubly_exposed_family(s, m).unwrap();
        let inst = ExposedInstance::new(&d.poset, &d.embedding, &d.x0, &d.y0).unwrap();
        prop_assert!(inst.trees.check(&inst.poset).is_empty());
        let pairs = inst.resolve(&orderforge::dimension::StandardExample { pairs: d.pairs.to_ids(&d.poset) }).unwrap();
        let r = inst.lemma_predicates(&pairs).unwrap();
        prop_assert!(r.ok());
        prop_assert!(inst.digraph(&pairs).unwrap().max_label() <= 6);
    }
}
