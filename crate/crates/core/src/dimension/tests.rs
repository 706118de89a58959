use super::*;
use crate::generators::{kelly, random_poset, standard_example};

/// All linear extensions, by brute force over prefixes.
fn all_extensions(p: &Poset) -> Vec<Vec<usize>> {
    fn go(p: &Poset, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == p.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..p.len() {
            if !used[x] && (0..p.len()).all(|y| !p.lt(y, x) || used[y]) {
                used[x] = true;
                prefix.push(x);
                go(p, prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut Vec::new(), &mut vec![false; p.len()], &mut out);
    out
}

/// Oracle: fewest linear extensions whose reversed pairs cover `pairs`.
fn oracle_dim(p: &Poset, pairs: &[(usize, usize)]) -> usize {
    if pairs.is_empty() {
        return 0;
    }
    let masks: Vec<u64> = all_extensions(p)
        .iter()
        .map(|ext| {
            let mut pos = vec![0; p.len()];
            for (i, &x) in ext.iter().enumerate() {
                pos[x] = i;
            }
            pairs.iter().enumerate().filter(|(_, &(a, b))| pos[b] < pos[a]).fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = if pairs.len() == 64 { u64::MAX } else { (1u64 << pairs.len()) - 1 };
    let mut frontier = vec![0u64];
    for t in 1.. {
        let mut next = Vec::new();
        for &f in &frontier {
            for &m in &masks {
                let g = f | m;
                if g == full {
                    return t;
                }
                next.push(g);
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    unreachable!()
}

#[test]
fn standard_examples_have_dimension_n() {
    for n in 2..=5 {
        let s = standard_example(n).unwrap();
        let r = dim_poset(&s).unwrap();
        assert_eq!(r.d, n as usize);
        assert!(r.realizer.verify(&s, &critical_pairs(&s)));
    }
}

#[test]
fn chains_and_antichains() {
    let chain = Poset::from_relations(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
    assert_eq!(dim_poset(&chain).unwrap().d, 1);
    let anti = Poset::from_relations::<&str>(&["x", "y"], &[]).unwrap();
    assert_eq!(dim_poset(&anti).unwrap().d, 2);
    assert_eq!(dim_of(&anti, &IncPairSet::default()).unwrap().d, 0);
}

#[test]
fn pair_sets_are_validated() {
    let p = Poset::from_relations(&["x", "y"], &[("x", "y")]).unwrap();
    assert!(matches!(IncPairSet::from_ids(&p, &[("x", "y")]), Err(Error::NotIncomparable(..))));
    assert!(matches!(IncPairSet::from_ids(&p, &[("x", "q")]), Err(Error::UnknownElement(_))));
    let q = Poset::from_relations::<&str>(&["x", "y"], &[]).unwrap();
    assert!(matches!(IncPairSet::from_ids(&q, &[("x", "y"), ("x", "y")]), Err(Error::DuplicatePair(..))));
}

#[test]
fn reversibility_cycle_alternates() {
    let s = standard_example(2).unwrap();
    let pairs = IncPairSet::from_ids(&s, &[("a1", "b1"), ("a2", "b2")]).unwrap();
    match is_reversible(&s, &pairs) {
        Reversibility::Cycle(c) => {
            assert_eq!(c.first(), c.last());
            assert!(c.len() >= 3);
        }
        Reversibility::Reversible(_) => panic!("the two pairs of S_2 cannot be reversed together"),
    }
    let one = IncPairSet::from_ids(&s, &[("a1", "b1")]).unwrap();
    match is_reversible(&s, &one) {
        Reversibility::Reversible(l) => assert!(s.is_linear_extension(&l) && l.reverses("a1", "b1")),
        Reversibility::Cycle(_) => panic!("a single pair is reversible"),
    }
}

#[test]
fn solver_matches_oracle_on_random_posets() {
    for seed in 0..40 {
        let p = random_poset(seed, 6, 0.35);
        let pairs = inc_all(&p);
        let r = dim_of(&p, &pairs).unwrap();
        assert_eq!(r.d, oracle_dim(&p, pairs.pairs()), "seed {seed}");
        assert!(r.realizer.verify(&p, &pairs));
        assert_eq!(dim_poset(&p).unwrap().d.max(1), r.d.max(1), "critical pairs agree, seed {seed}");
        let mm = inc_min_max(&p);
        assert_eq!(dim_of(&p, &mm).unwrap().d, oracle_dim(&p, mm.pairs()), "min-max, seed {seed}");
    }
}

#[test]
fn kelly_small_dimensions_match_oracle() {
    let (k3, _) = kelly(3).unwrap();
    let crit = critical_pairs(&k3);
    assert_eq!(dim_poset(&k3).unwrap().d, oracle_dim(&k3, crit.pairs()));
    assert_eq!(dim_poset(&k3).unwrap().d, 3);
}

#[test]
fn budget_is_enforced() {
    let (p, nodes) = (0..200)
        .map(|seed| random_poset(seed, 10, 0.3))
        .map(|p| {
            let n = dim_of(&p, &inc_all(&p)).unwrap().nodes;
            (p, n)
        })
        .find(|(_, n)| *n > 3)
        .expect("some instance needs a search");
    assert!(nodes > 3);
    assert!(matches!(dim_of_with(&p, &inc_all(&p), 3), Err(Error::BudgetExceeded(3))));
}

#[test]
fn rho_finds_standard_examples() {
    for n in 2..=4 {
        let s = standard_example(n).unwrap();
        let (r, w) = rho(&s, &inc_min_max(&s)).unwrap();
        assert_eq!(r, n as usize);
        assert!(w.verify(&s));
    }
    let p = Poset::from_relations::<&str>(&["x"], &[]).unwrap();
    assert!(matches!(rho(&p, &IncPairSet::default()), Err(Error::EmptyInput)));
}

#[test]
fn kappa_of_kelly_posets() {
    let (k3, _) = kelly(3).unwrap();
    let (n, w) = kappa(&k3, default_kappa_cap(&k3)).unwrap();
    assert_eq!(n, 3);
    assert!(w.unwrap().verify(&k3));
    let s = standard_example(3).unwrap();
    assert!(matches!(kappa(&s, 2), Err(Error::TooSmall(2))));
}

#[test]
fn bound_formula() {
    assert_eq!(bound_f(1).unwrap(), 62_726_400);
    assert_eq!(bound_f(2).unwrap(), 233_280_000);
    assert!(matches!(bound_f(0), Err(Error::NonPositive(0))));
}
