use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use posetforge::embeddings::{check_projection_map, is_regular_suborder, pseudo_projection, ProjectionMap, ProjectionScope, Route};
use posetforge::order::{
    compatibility_closure, first_lost_compatibility, is_dense_subset, is_regular_open, regular_open_closure, FinitePoset, Suborder,
};
use posetforge::random::{random_poset, rng};

fn poset(n: usize, density: f64, seed: u64) -> FinitePoset {
    random_poset(n, density, &mut rng(seed)).unwrap()
}

fn sub(p: &FinitePoset, bits: u64) -> Option<Suborder> {
    let members: Vec<usize> = (0..p.size()).filter(|&i| bits >> i & 1 == 1).collect();
    (!members.is_empty()).then(|| Suborder::new(p, members).unwrap())
}

fn regular(p: &FinitePoset, q: &Suborder) -> bool {
    is_regular_suborder(p, q, Route::Antichain).unwrap().regular
}

/// Minimal elements plus whatever `bits` adds.
fn dense(p: &FinitePoset, bits: u64) -> Suborder {
    Suborder::new(p, (0..p.size()).filter(|&i| p.minimal().contains(i) || bits >> i & 1 == 1)).unwrap()
}

fn local(q: &Suborder, members: &[usize]) -> Vec<usize> {
    members.iter().map(|m| q.members().binary_search(m).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn routes_agree(n in 1usize..11, density in 0.0f64..0.7, seed: u64, bits: u64) {
        let p = poset(n, density, seed);
        prop_assume!(bits & ((1 << n) - 1) != 0);
        let q = sub(&p, bits).unwrap();
        let v: Vec<bool> = Route::ALL.iter().map(|&r| is_regular_suborder(&p, &q, r).unwrap().regular).collect();
        prop_assert!(v.iter().all(|&x| x == v[0]), "{:?}", v);
    }

    #[test]
    fn transitive(n in 2usize..10, density in 0.0f64..0.7, seed: u64, qbits: u64, rbits: u64, dense_q: bool, dense_r: bool) {
        let p = poset(n, density, seed);
        let q = if dense_q { dense(&p, qbits) } else { match sub(&p, qbits) { Some(q) => q, None => return Ok(()) } };
        let qp = p.induced(&q);
        let r_local = if dense_r { dense(&qp, rbits) } else { match sub(&qp, rbits) { Some(r) => r, None => return Ok(()) } };
        let r = Suborder::new(&p, r_local.members().iter().map(|&i| q.members()[i])).unwrap();
        if regular(&p, &q) && regular(&qp, &r_local) {
            prop_assert!(regular(&p, &r));
        }
    }

    #[test]
    fn inherited_by_compatibility_closed_intermediates(n in 2usize..10, density in 0.0f64..0.7, seed: u64, rbits: u64, qbits: u64, dense_r: bool) {
        let p = poset(n, density, seed);
        let r = if dense_r { dense(&p, rbits) } else { match sub(&p, rbits) { Some(r) => r, None => return Ok(()) } };
        let q0 = Suborder::new(&p, (0..n).filter(|&i| r.contains(i) || qbits >> i & 1 == 1)).unwrap();
        let q = compatibility_closure(&p, &q0);
        prop_assert!(first_lost_compatibility(&p, &q).is_none());
        if regular(&p, &r) {
            let qp = p.induced(&q);
            let rl = Suborder::new(&qp, local(&q, r.members())).unwrap();
            prop_assert!(regular(&qp, &rl));
        }
    }

    #[test]
    fn dense_suborders_are_regular(n in 1usize..11, density in 0.0f64..0.7, seed: u64, bits: u64) {
        let p = poset(n, density, seed);
        let q = dense(&p, bits);
        prop_assert!(is_dense_subset(&p, q.mask()).unwrap());
        prop_assert!(regular(&p, &q));
    }

    #[test]
    fn regular_open_closure_is_idempotent(n in 1usize..12, density in 0.0f64..0.7, seed: u64, bits: u64) {
        let p = poset(n, density, seed);
        let mut u = FixedBitSet::with_capacity(n);
        u.extend((0..n).filter(|&i| bits >> i & 1 == 1));
        let c = regular_open_closure(&p, &u).unwrap();
        prop_assert_eq!(&regular_open_closure(&p, &c).unwrap(), &c);
        prop_assert!(is_regular_open(&p, &c).unwrap());
        // Regular open sets are downward closed.
        prop_assert_eq!(&p.down_closure(&c), &c);
    }

    #[test]
    fn pseudo_projections_meet_their_contract(n in 1usize..10, density in 0.0f64..0.7, seed: u64, bits: u64, b in 0usize..10) {
        let p = poset(n, density, seed);
        let Some(q) = sub(&p, bits) else { return Ok(()) };
        let b = b % n;
        if let Some(a) = pseudo_projection(&p, &q, b).unwrap() {
            prop_assert!(q.contains(a));
            for &x in q.members() {
                if p.leq(x, a) {
                    prop_assert!(p.compatible(x, b), "x={} a={} b={}", x, a, b);
                }
            }
        } else {
            // Every candidate has an extension in q incompatible with b.
            for &a in q.members() {
                prop_assert!(q.members().iter().any(|&x| p.leq(x, a) && !p.compatible(x, b)));
            }
        }
    }

    #[test]
    fn monotone_lifting_maps_pull_back_antichains(n in 1usize..9, density in 0.0f64..0.7, seed: u64, edits in proptest::collection::vec((0usize..9, 0usize..9), 0..3)) {
        let p = poset(n, density, seed);
        let mut pm = ProjectionMap::identity(&p);
        for (s, t) in edits {
            pm = pm.with_entry(s % n, t % n).unwrap();
        }
        let c = check_projection_map(&p, &pm, &ProjectionScope::full()).unwrap();
        if c.monotone.is_none() && c.lifting.is_none() {
            prop_assert!(c.antichains.is_none(), "{:?}", c);
        }
    }
}

#[test]
fn identity_maps_pass() {
    for seed in 0..50 {
        let p = poset(8, 0.3, seed);
        assert!(check_projection_map(&p, &ProjectionMap::identity(&p), &ProjectionScope::full())
            .unwrap()
            .passed());
    }
}

#[test]
fn directed_families_have_a_maximum() {
    let p = poset(8, 0.3, 11);
    let chain: Vec<Suborder> = (1..=8).map(|k| Suborder::new(&p, 0..k).unwrap()).collect();
    let mut union = p.empty_set();
    for q in &chain {
        union.union_with(q.mask());
    }
    let top = chain.last().unwrap();
    assert_eq!(&union, top.mask());
    assert!(chain.iter().all(|q| q.mask().is_subset(top.mask())));
}

#[test]
fn unrestricted_intermediates_can_lose_regularity() {
    let p = FinitePoset::new(8, &[(4, 2), (2, 5), (5, 3), (2, 6)]).unwrap();
    let q = Suborder::new(&p, [0, 1, 3, 6, 7]).unwrap();
    let r = Suborder::new(&p, [0, 1, 3, 7]).unwrap();
    assert!(regular(&p, &r));
    let qp = p.induced(&q);
    assert!(!regular(&qp, &Suborder::new(&qp, local(&q, r.members())).unwrap()));
}

#[test]
fn mutations_of_a_passing_map_fail() {
    use posetforge::zoo::modred;
    let (src, map) = modred::mod_reduction(&modred::ModParams::default()).unwrap();
    assert!(check_projection_map(&src, &map, &ProjectionScope::full()).unwrap().passed());
    for m in modred::mutations(&map, 10, 3) {
        assert!(!check_projection_map(&src, &m, &ProjectionScope::full()).unwrap().passed());
    }
}
