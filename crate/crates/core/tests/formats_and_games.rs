use proptest::prelude::*;

use posetforge::boolean::FiniteBooleanAlgebra;
use posetforge::embeddings::ProjectionMap;
use posetforge::error::Error;
use posetforge::format::{parse_pmap, parse_poset, parse_sub, write_pmap, write_poset, write_sub};
use posetforge::games::{g, h, parse_strategy, write_strategy, Player, StrategyFile};
use posetforge::order::{FinitePoset, Suborder};
use posetforge::random::{random_poset, rng};

proptest! {
    #[test]
    fn poset_text_round_trips(n in 1usize..15, density in 0.0f64..0.7, seed: u64) {
        let p = random_poset(n, density, &mut rng(seed)).unwrap();
        prop_assert_eq!(parse_poset(&write_poset(&p, None)).unwrap(), p);
    }

    #[test]
    fn sub_and_pmap_round_trip(n in 1usize..12, density in 0.0f64..0.7, seed: u64, bits in 1u64..4096, edits in proptest::collection::vec((0usize..12, 0usize..12), 0..4)) {
        let p = random_poset(n, density, &mut rng(seed)).unwrap();
        let members: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
        prop_assume!(!members.is_empty());
        let q = Suborder::new(&p, members).unwrap();
        prop_assert_eq!(parse_sub(&write_sub(&q), &p).unwrap(), q);
        let mut pm = ProjectionMap::identity(&p);
        for (s, t) in edits {
            pm = pm.with_entry(s % n, t % n).unwrap();
        }
        let back = parse_pmap(&write_pmap(&pm), n, p.clone()).unwrap();
        prop_assert_eq!(back.pairs(), pm.pairs());
    }

    #[test]
    fn strategy_files_round_trip(atoms in 1usize..4, seed: u64) {
        let st = h::random_strategy(atoms, &mut rng(seed));
        let file = StrategyFile::H { atoms, strategy: st };
        prop_assert_eq!(parse_strategy(&write_strategy(&file)).unwrap(), file);
    }
}

#[test]
fn loader_reports_the_offending_line() {
    let cyclic = "poset v1\nn 2\nle 0 1\n# comment\nle 1 0\n";
    assert!(matches!(parse_poset(cyclic), Err(Error::Cycle(_))));
    let bad = "poset v1\nn 2\nle 0 x\n";
    assert_eq!(
        parse_poset(bad).unwrap_err(),
        Error::Input {
            line: 3,
            msg: "expected an index, found \"x\"".into()
        }
    );
    assert!(matches!(parse_poset("n 2\n"), Err(Error::Input { line: 1, .. })));
}

#[test]
fn h_examples() {
    let two = FiniteBooleanAlgebra::new(1).unwrap();
    let sol = h::solve(&two).unwrap();
    assert_eq!((sol.winner, sol.rank[0]), (Player::I, Some(1)));

    let four = FiniteBooleanAlgebra::new(2).unwrap();
    let v = h::verify_strategy(&four, &h::complement_strategy(2)).unwrap();
    assert!(v.winning && v.certificates.iter().all(|c| c.acyclic()));

    // Offering one atom forever: II stays inside it, never covering the other.
    let v = h::verify_strategy(&four, &h::constant_strategy(2, 0b01)).unwrap();
    assert!(!v.winning);
    assert!(v.certificates.iter().any(|c| c.for_element == 0b10 && !c.acyclic()));

    let trace = h::simulate(&four, &h::complement_strategy(2), &h::least_atom_strategy(2), 10).unwrap();
    assert_eq!(trace.outcome, h::Outcome::ReachedOne { round: 1 });

    for atoms in 1..=5 {
        assert_eq!(h::solve(&FiniteBooleanAlgebra::new(atoms).unwrap()).unwrap().winner, Player::I);
    }
}

#[test]
fn g_examples() {
    for p in [
        FinitePoset::chain(2).unwrap(),
        FinitePoset::chain(4).unwrap(),
        FinitePoset::antichain(2).unwrap(),
        posetforge::zoo::cohen::cohen_poset(1).unwrap(),
    ] {
        let sol = g::solve(&p).unwrap();
        assert_eq!(sol.winner, Player::II);
        assert!(g::verify_strategy(&p, &sol.strategy).unwrap().winning);
    }
    let a2 = FinitePoset::antichain(2).unwrap();
    let zero_i = g::constant_strategy(Player::I, 2, 0);
    let zero_ii = g::constant_strategy(Player::II, 2, 0);
    let trace = g::simulate(&a2, &zero_i, &zero_ii, 10).unwrap();
    assert_eq!((trace.final_set, trace.regular, trace.winner()), (0b01, false, Some(Player::I)));
}

#[test]
fn size_bounds_are_errors() {
    assert!(matches!(
        h::solve(&FiniteBooleanAlgebra::new(h::MAX_ATOMS + 1).unwrap()),
        Err(Error::Size { .. })
    ));
    assert!(matches!(
        g::solve(&FinitePoset::antichain(g::MAX_ELEMENTS + 1).unwrap()),
        Err(Error::Size { .. })
    ));
}
