//! Game 𝒢 on a finite poset with at most [`MAX_ELEMENTS`] elements.
//!
//! I and II alternately pick elements; I moves first. The accumulated set
//! can only grow, so every play eventually stops changing. II wins iff that
//! final set is a regular suborder.
//!
//! Positions are keyed by the accumulated set before I's move; II's
//! positions also record I's pending move. Playing an element already in
//! the set leaves the set unchanged and acts as a pass.

use std::collections::VecDeque;
use std::fmt;

use super::{show_mask, Player, PositionalStrategy};
use crate::embeddings::is_regular_suborder_antichain;
use crate::error::{check_size, Error, Result};
use crate::order::{FinitePoset, Suborder};
use crate::report::CheckReport;

pub const MAX_ELEMENTS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub set: u64,
    pub last: Option<usize>,
}

impl Position {
    pub fn i(set: u64) -> Self {
        Position { set, last: None }
    }

    pub fn ii(set: u64, a: usize) -> Self {
        Position { set, last: Some(a) }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", show_mask(self.set))?;
        if let Some(a) = self.last {
            write!(f, "m{a}")?;
        }
        Ok(())
    }
}

pub type Strategy = PositionalStrategy<Position, usize>;

fn check_bound(p: &FinitePoset) -> Result<usize> {
    let n = p.size();
    check_size("game 𝒢 poset", n as u128, MAX_ELEMENTS as u128)?;
    Ok(n)
}

/// `table[S]` says whether the set with member mask `S` is regular;
/// `table[0]` is false.
pub fn regularity_table(p: &FinitePoset) -> Result<Vec<bool>> {
    let n = check_bound(p)?;
    let mut table = vec![false; 1 << n];
    for (mask, slot) in table.iter_mut().enumerate().skip(1) {
        let q = Suborder::new(p, (0..n).filter(|i| mask >> i & 1 == 1))?;
        *slot = is_regular_suborder_antichain(p, &q)?.regular;
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Player,
    pub strategy: Strategy,
    /// `win_ii[S]`: II wins when I is to move with accumulated set `S`.
    pub win_ii: Vec<bool>,
    pub regular: Vec<bool>,
}

/// Computes II's winning region by descending set size and extracts a
/// positional strategy for the winner from the empty start.
pub fn solve(p: &FinitePoset) -> Result<Solution> {
    let regular = regularity_table(p)?;
    solve_with(p, regular)
}

/// As [`solve`], with a precomputed regularity table.
pub fn solve_with(p: &FinitePoset, regular: Vec<bool>) -> Result<Solution> {
    let n = check_bound(p)?;
    if regular.len() != 1 << n {
        return Err(Error::AmbientMismatch("regularity table of the wrong size".into()));
    }
    let all = (1u64 << n) - 1;
    let bit = |i: usize| 1u64 << i;
    let mut win = vec![false; 1 << n];
    for s in (1..=all).rev() {
        let adds = (0..n)
            .filter(|&a| s & bit(a) == 0)
            .all(|a| (0..n).any(|b| win[(s | bit(a) | bit(b)) as usize]));
        let passes = regular[s as usize] || (0..n).any(|b| s & bit(b) == 0 && win[(s | bit(b)) as usize]);
        win[s as usize] = adds && passes;
    }
    let start = (0..n).all(|a| (0..n).any(|b| win[(bit(a) | bit(b)) as usize]));
    win[0] = start;

    let winner = if start { Player::II } else { Player::I };
    let mut strategy = Strategy::new(winner);
    for s in 0..=all {
        match winner {
            Player::II => {
                for a in 0..n {
                    let b = if s & bit(a) == 0 {
                        (0..n).find(|&b| win[(s | bit(a) | bit(b)) as usize])
                    } else if regular[s as usize] {
                        Some(a)
                    } else {
                        (0..n).find(|&b| s & bit(b) == 0 && win[(s | bit(b)) as usize])
                    };
                    strategy.choice.insert(Position::ii(s, a), b.unwrap_or(a));
                }
            }
            Player::I => {
                let add = (0..n)
                    .filter(|&a| s & bit(a) == 0)
                    .find(|&a| (0..n).all(|b| !win[(s | bit(a) | bit(b)) as usize]));
                let a = add.unwrap_or(if s == 0 { 0 } else { s.trailing_zeros() as usize });
                strategy.choice.insert(Position::i(s), a);
            }
        }
    }
    Ok(Solution {
        winner,
        strategy,
        win_ii: win,
        regular,
    })
}

pub fn constant_strategy(owner: Player, size: usize, x: usize) -> Strategy {
    let mut st = Strategy::new(owner);
    for s in 0..1u64 << size {
        match owner {
            Player::I => {
                st.choice.insert(Position::i(s), x);
            }
            Player::II => {
                for a in 0..size {
                    st.choice.insert(Position::ii(s, a), x);
                }
            }
        }
    }
    st
}

fn lookup(st: &Strategy, pos: Position, n: usize) -> Result<usize> {
    match st.get(&pos) {
        Some(x) if x < n => Ok(x),
        Some(x) => Err(Error::IllegalStrategy(format!("element {x} out of range at {pos}"))),
        None => Err(Error::IllegalStrategy(format!("no move at {pos}"))),
    }
}

/// Outcome of checking one player's strategy against every behaviour of
/// the opponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub owner: Player,
    pub winning: bool,
    /// A reachable set where the opponent can make the play stop with the
    /// wrong regularity verdict.
    pub witness: Option<u64>,
}

impl Verification {
    pub fn report(&self, name: impl Into<String>) -> CheckReport {
        CheckReport::from_failure(name, self.witness.map(|s| format!("owner={};stall={}", self.owner, show_mask(s))))
    }
}

/// Explores every set reachable against an arbitrary opponent. The opponent
/// can end the play at `S` exactly when some of its moves leave `S`
/// unchanged there.
pub fn verify_strategy(p: &FinitePoset, st: &Strategy) -> Result<Verification> {
    let regular = regularity_table(p)?;
    verify_with(p, st, &regular)
}

pub fn verify_with(p: &FinitePoset, st: &Strategy, regular: &[bool]) -> Result<Verification> {
    let n = check_bound(p)?;
    let bit = |i: usize| 1u64 << i;
    let mut seen = vec![false; 1 << n];
    let mut queue = VecDeque::from([0u64]);
    seen[0] = true;
    while let Some(s) = queue.pop_front() {
        let mut next = Vec::new();
        match st.owner {
            Player::II => {
                for a in 0..n {
                    let b = lookup(st, Position::ii(s, a), n)?;
                    next.push(s | bit(a) | bit(b));
                }
            }
            Player::I => {
                let a = lookup(st, Position::i(s), n)?;
                next.extend((0..n).map(|b| s | bit(a) | bit(b)));
            }
        }
        for t in next {
            if t == s {
                let owner_wins = regular[s as usize] == (st.owner == Player::II);
                if !owner_wins {
                    return Ok(Verification {
                        owner: st.owner,
                        winning: false,
                        witness: Some(s),
                    });
                }
            } else if !seen[t as usize] {
                seen[t as usize] = true;
                queue.push_back(t);
            }
        }
    }
    Ok(Verification {
        owner: st.owner,
        winning: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub rounds: Vec<(usize, usize)>,
    pub final_set: u64,
    /// The round that left the set unchanged, if the play got that far.
    pub stabilized_at: Option<usize>,
    pub regular: bool,
}

impl Trace {
    pub fn winner(&self) -> Option<Player> {
        self.stabilized_at.map(|_| if self.regular { Player::II } else { Player::I })
    }
}

pub fn simulate(p: &FinitePoset, sigma: &Strategy, tau: &Strategy, max_rounds: usize) -> Result<Trace> {
    let n = check_bound(p)?;
    if sigma.owner != Player::I || tau.owner != Player::II {
        return Err(Error::IllegalStrategy("expected strategies for I and II, in that order".into()));
    }
    let mut s = 0u64;
    let mut rounds = Vec::new();
    let mut stabilized_at = None;
    for round in 0..max_rounds {
        let a = lookup(sigma, Position::i(s), n)?;
        let b = lookup(tau, Position::ii(s, a), n)?;
        rounds.push((a, b));
        let t = s | 1 << a | 1 << b;
        if t == s {
            stabilized_at = Some(round);
            break;
        }
        s = t;
    }
    let regular = s != 0 && is_regular_suborder_antichain(p, &Suborder::new(p, (0..n).filter(|i| s >> i & 1 == 1))?)?.regular;
    Ok(Trace {
        rounds,
        final_set: s,
        stabilized_at,
        regular,
    })
}
