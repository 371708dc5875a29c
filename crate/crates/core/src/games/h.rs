//! Game ℋ on a finite powerset algebra with at most [`MAX_ATOMS`] atoms.
//!
//! Elements are bitmasks over the atoms. Only the join of II's answers so
//! far matters, so positions are collapsed to that partial sum. A play that
//! never reaches `1` is a win for II.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use super::{show_mask, Player, PositionalStrategy};
use crate::boolean::FiniteBooleanAlgebra;
use crate::error::{check_size, Error, Result};
use crate::report::CheckReport;

pub const MAX_ATOMS: usize = 10;

/// `offered` is I's pending move when II is to answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub sum: u64,
    pub offered: Option<u64>,
}

impl Position {
    pub fn to_move(&self) -> Player {
        if self.offered.is_some() {
            Player::II
        } else {
            Player::I
        }
    }

    pub fn i(sum: u64) -> Self {
        Position { sum, offered: None }
    }

    pub fn ii(sum: u64, a: u64) -> Self {
        Position { sum, offered: Some(a) }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", show_mask(self.sum))?;
        if let Some(a) = self.offered {
            write!(f, "a{}", show_mask(a))?;
        }
        Ok(())
    }
}

pub type Strategy = PositionalStrategy<Position, u64>;

pub fn full(atoms: usize) -> u64 {
    if atoms >= 64 {
        u64::MAX
    } else {
        (1u64 << atoms) - 1
    }
}

/// Nonzero submasks of `a`, largest first.
fn submasks(a: u64) -> impl Iterator<Item = u64> {
    let mut c = a;
    std::iter::from_fn(move || {
        if c == 0 {
            return None;
        }
        let out = c;
        c = (c - 1) & a;
        Some(out)
    })
}

fn atoms_of(b: &FiniteBooleanAlgebra) -> Result<usize> {
    let n = b.atom_count();
    check_size("game ℋ atom count", n as u128, MAX_ATOMS as u128)?;
    Ok(n)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Player,
    /// A positional winning strategy for `winner`.
    pub strategy: Strategy,
    /// Rounds I needs to force the sum to `1` from each partial sum, if I can.
    pub rank: Vec<Option<usize>>,
}

impl Solution {
    pub fn i_wins_from(&self, sum: u64) -> bool {
        self.rank[sum as usize].is_some()
    }
}

/// Solves ℋ by computing I's attractor to the partial sum `1`.
pub fn solve(b: &FiniteBooleanAlgebra) -> Result<Solution> {
    let n = atoms_of(b)?;
    let one = full(n);
    let states = 1usize << n;
    let mut rank: Vec<Option<usize>> = vec![None; states];
    let mut choice: Vec<Option<u64>> = vec![None; states];
    rank[one as usize] = Some(0);
    choice[one as usize] = Some(one);
    for round in 1.. {
        let mut added = Vec::new();
        for s in 0..one {
            if rank[s as usize].is_some() {
                continue;
            }
            let forcing = (1..=one).find(|&a| submasks(a).all(|c| rank[(s | c) as usize].is_some_and(|r| r < round)));
            if let Some(a) = forcing {
                added.push((s, a));
            }
        }
        if added.is_empty() {
            break;
        }
        for (s, a) in added {
            rank[s as usize] = Some(round);
            choice[s as usize] = Some(a);
        }
    }

    let winner = if rank[0].is_some() { Player::I } else { Player::II };
    let mut strategy = Strategy::new(winner);
    match winner {
        Player::I => {
            for s in 0..=one {
                let a = choice[s as usize].unwrap_or(one & !s);
                strategy.choice.insert(Position::i(s), if a == 0 { one } else { a });
            }
        }
        Player::II => {
            for s in 0..=one {
                for a in 1..=one {
                    let c = submasks(a)
                        .filter(|&c| rank[(s | c) as usize].is_none())
                        .min()
                        .unwrap_or(a & a.wrapping_neg());
                    strategy.choice.insert(Position::ii(s, a), c);
                }
            }
        }
    }
    Ok(Solution { winner, strategy, rank })
}

/// I always offers everything not yet covered.
pub fn complement_strategy(atoms: usize) -> Strategy {
    let one = full(atoms);
    let mut s = Strategy::new(Player::I);
    for sum in 0..=one {
        s.choice.insert(Position::i(sum), if sum == one { one } else { one & !sum });
    }
    s
}

/// I always offers the same element.
pub fn constant_strategy(atoms: usize, a: u64) -> Strategy {
    let mut s = Strategy::new(Player::I);
    for sum in 0..=full(atoms) {
        s.choice.insert(Position::i(sum), a);
    }
    s
}

/// II always answers with the least atom of I's offer.
pub fn least_atom_strategy(atoms: usize) -> Strategy {
    let one = full(atoms);
    let mut s = Strategy::new(Player::II);
    for sum in 0..=one {
        for a in 1..=one {
            s.choice.insert(Position::ii(sum, a), a & a.wrapping_neg());
        }
    }
    s
}

/// A uniformly random nonzero offer at every partial sum.
pub fn random_strategy<R: Rng + ?Sized>(atoms: usize, rng: &mut R) -> Strategy {
    let one = full(atoms);
    let mut s = Strategy::new(Player::I);
    for sum in 0..=one {
        s.choice.insert(Position::i(sum), rng.random_range(1..=one));
    }
    s
}

fn offer(sigma: &Strategy, one: u64, sum: u64) -> Result<u64> {
    match sigma.get(&Position::i(sum)) {
        Some(a) if a != 0 && a & !one == 0 => Ok(a),
        Some(a) => Err(Error::IllegalStrategy(format!("I offers {} at s{}", show_mask(a), show_mask(sum)))),
        None => Err(Error::IllegalStrategy(format!("no move for I at s{}", show_mask(sum)))),
    }
}

fn check_owner(sigma: &Strategy, owner: Player) -> Result<()> {
    if sigma.owner != owner {
        return Err(Error::IllegalStrategy(format!(
            "expected a strategy for {owner}, got one for {}",
            sigma.owner
        )));
    }
    Ok(())
}

/// Checks that I's strategy is defined and legal at every partial sum other
/// than `1`.
fn check_i(sigma: &Strategy, one: u64) -> Result<()> {
    check_owner(sigma, Player::I)?;
    for sum in 0..one {
        offer(sigma, one, sum)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    /// `rank` strictly decreases along every edge.
    Acyclic { rank: BTreeMap<u64, usize> },
    /// A path from the empty sum to a cycle of partial sums.
    Lasso { stem: Vec<u64>, cycle: Vec<u64> },
}

/// The restricted play graph for one element `b`: plays following I's
/// strategy in which every answer of II is disjoint from `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFoundedCertificate {
    pub for_element: u64,
    pub verdict: CertificateVerdict,
}

impl WellFoundedCertificate {
    pub fn acyclic(&self) -> bool {
        matches!(self.verdict, CertificateVerdict::Acyclic { .. })
    }
}

impl fmt::Display for WellFoundedCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(|&x| show_mask(x)).collect::<Vec<_>>().join(">");
        match &self.verdict {
            CertificateVerdict::Acyclic { rank } => {
                write!(
                    f,
                    "b={};acyclic;height={}",
                    show_mask(self.for_element),
                    rank.get(&0).copied().unwrap_or(0)
                )
            }
            CertificateVerdict::Lasso { stem, cycle } => {
                write!(f, "b={};stem={};cycle={}", show_mask(self.for_element), join(stem), join(cycle))
            }
        }
    }
}

fn certificate(sigma: &Strategy, one: u64, b: u64) -> Result<WellFoundedCertificate> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    struct Search<'a> {
        sigma: &'a Strategy,
        one: u64,
        b: u64,
        mark: BTreeMap<u64, Mark>,
        rank: BTreeMap<u64, usize>,
        path: Vec<u64>,
    }
    impl Search<'_> {
        fn succ(&self, s: u64) -> Result<Vec<u64>> {
            if s == self.one {
                return Ok(Vec::new());
            }
            let a = offer(self.sigma, self.one, s)?;
            let mut out: Vec<u64> = submasks(a).filter(|c| c & self.b == 0).map(|c| s | c).collect();
            out.sort_unstable();
            out.dedup();
            Ok(out)
        }

        /// Returns a lasso if one is reachable from `s`.
        fn visit(&mut self, s: u64) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
            self.mark.insert(s, Mark::Open);
            self.path.push(s);
            let mut height = 0;
            for t in self.succ(s)? {
                match self.mark.get(&t) {
                    Some(Mark::Open) => {
                        let at = self.path.iter().position(|&x| x == t).expect("open node is on the path");
                        return Ok(Some((self.path[..at].to_vec(), self.path[at..].to_vec())));
                    }
                    Some(Mark::Done) => {}
                    None => {
                        if let Some(l) = self.visit(t)? {
                            return Ok(Some(l));
                        }
                    }
                }
                height = height.max(self.rank[&t] + 1);
            }
            self.path.pop();
            self.mark.insert(s, Mark::Done);
            self.rank.insert(s, height);
            Ok(None)
        }
    }
    let mut search = Search {
        sigma,
        one,
        b,
        mark: BTreeMap::new(),
        rank: BTreeMap::new(),
        path: Vec::new(),
    };
    let verdict = match search.visit(0)? {
        Some((stem, cycle)) => CertificateVerdict::Lasso { stem, cycle },
        None => CertificateVerdict::Acyclic { rank: search.rank },
    };
    Ok(WellFoundedCertificate { for_element: b, verdict })
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub winning: bool,
    pub certificates: Vec<WellFoundedCertificate>,
}

impl Verification {
    pub fn report(&self, name: impl Into<String>) -> CheckReport {
        let failure = self.certificates.iter().find(|c| !c.acyclic()).map(|c| c.to_string());
        CheckReport::from_failure(name, failure)
    }
}

/// Builds one certificate per nonzero `b`; I's strategy wins iff all of them
/// are acyclic.
pub fn verify_strategy(alg: &FiniteBooleanAlgebra, sigma: &Strategy) -> Result<Verification> {
    let one = full(atoms_of(alg)?);
    check_i(sigma, one)?;
    let certificates = (1..=one).map(|b| certificate(sigma, one, b)).collect::<Result<Vec<_>>>()?;
    Ok(Verification {
        winning: certificates.iter().all(|c| c.acyclic()),
        certificates,
    })
}

/// Whether every play following `sigma` reaches `1`, by a least fixpoint
/// over partial sums.
pub fn strategy_wins(alg: &FiniteBooleanAlgebra, sigma: &Strategy) -> Result<bool> {
    let one = full(atoms_of(alg)?);
    check_i(sigma, one)?;
    let mut win = vec![false; one as usize + 1];
    win[one as usize] = true;
    loop {
        let mut changed = false;
        for s in 0..one {
            if !win[s as usize] {
                let a = offer(sigma, one, s)?;
                if submasks(a).all(|c| win[(s | c) as usize]) {
                    win[s as usize] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(win[0]);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Round {
    pub a: u64,
    pub b: u64,
    pub sum: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The partial sum became `1` after this round (I wins).
    ReachedOne {
        round: usize,
    },
    /// This round left the partial sum unchanged; with positional
    /// strategies the play repeats forever (II wins).
    Stabilized {
        round: usize,
        sum: u64,
    },
    RoundLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn winner(&self) -> Option<Player> {
        match self.outcome {
            Outcome::ReachedOne { .. } => Some(Player::I),
            Outcome::Stabilized { .. } => Some(Player::II),
            Outcome::RoundLimit => None,
        }
    }
}

pub fn simulate(alg: &FiniteBooleanAlgebra, sigma: &Strategy, tau: &Strategy, max_rounds: usize) -> Result<Trace> {
    let one = full(atoms_of(alg)?);
    check_owner(sigma, Player::I)?;
    check_owner(tau, Player::II)?;
    let mut sum = 0;
    let mut rounds = Vec::new();
    for round in 0..max_rounds {
        let a = offer(sigma, one, sum)?;
        let b = match tau.get(&Position::ii(sum, a)) {
            Some(b) if b != 0 && b & !a == 0 => b,
            Some(b) => return Err(Error::IllegalStrategy(format!("II answers {} to {}", show_mask(b), show_mask(a)))),
            None => {
                return Err(Error::IllegalStrategy(format!("no move for II at {}", Position::ii(sum, a))));
            }
        };
        let next = sum | b;
        rounds.push(Round { a, b, sum: next });
        if next == one {
            return Ok(Trace {
                rounds,
                outcome: Outcome::ReachedOne { round },
            });
        }
        if next == sum {
            return Ok(Trace {
                rounds,
                outcome: Outcome::Stabilized { round, sum },
            });
        }
        sum = next;
    }
    Ok(Trace {
        rounds,
        outcome: Outcome::RoundLimit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(n).unwrap()
    }

    #[test]
    fn i_wins_small_algebras() {
        for n in 1..=4 {
            let sol = solve(&alg(n)).unwrap();
            assert_eq!(sol.winner, Player::I);
            // II can always answer with a single atom
            assert_eq!(sol.rank[0], Some(n));
            assert!(strategy_wins(&alg(n), &sol.strategy).unwrap());
        }
    }

    #[test]
    fn complement_strategy_is_certified() {
        let v = verify_strategy(&alg(2), &complement_strategy(2)).unwrap();
        assert!(v.winning);
        assert_eq!(v.certificates.len(), 3);
        for c in &v.certificates {
            let CertificateVerdict::Acyclic { rank } = &c.verdict else {
                panic!()
            };
            for (&s, &r) in rank {
                let a = complement_strategy(2).get(&Position::i(s)).unwrap();
                for t in submasks(a).filter(|x| x & c.for_element == 0).map(|x| s | x) {
                    if s != 3 {
                        assert!(rank[&t] < r);
                    }
                }
            }
        }
    }

    #[test]
    fn constant_atom_strategy_stalls() {
        let v = verify_strategy(&alg(2), &constant_strategy(2, 0b01)).unwrap();
        assert!(!v.winning);
        let lasso = v.certificates.iter().find(|c| c.for_element == 0b10).unwrap();
        assert_eq!(
            lasso.verdict,
            CertificateVerdict::Lasso {
                stem: vec![0],
                cycle: vec![0b01]
            }
        );
        assert!(!strategy_wins(&alg(2), &constant_strategy(2, 0b01)).unwrap());
    }

    #[test]
    fn two_element_algebra() {
        let a = alg(1);
        let v = verify_strategy(&a, &constant_strategy(1, 1)).unwrap();
        assert!(v.winning);
        let t = simulate(&a, &constant_strategy(1, 1), &least_atom_strategy(1), 5).unwrap();
        assert_eq!(t.outcome, Outcome::ReachedOne { round: 0 });
    }

    #[test]
    fn simulation() {
        let t = simulate(&alg(2), &complement_strategy(2), &least_atom_strategy(2), 10).unwrap();
        assert_eq!(t.outcome, Outcome::ReachedOne { round: 1 });
        assert_eq!(t.rounds[0], Round { a: 3, b: 1, sum: 1 });
        let t = simulate(&alg(2), &constant_strategy(2, 1), &least_atom_strategy(2), 10).unwrap();
        assert_eq!(t.outcome, Outcome::Stabilized { round: 1, sum: 1 });
        assert!(matches!(
            simulate(&alg(2), &constant_strategy(2, 0), &least_atom_strategy(2), 3),
            Err(Error::IllegalStrategy(_))
        ));
    }

    #[test]
    fn size_bound() {
        assert!(matches!(solve(&alg(MAX_ATOMS + 1)), Err(Error::Size { .. })));
    }
}
