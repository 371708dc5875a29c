//! Brute-force reference implementations.
//!
//! Everything here is computed from the definitions by exhaustive loops. The
//! only things taken from `posetforge` are the data types and raw `leq`
//! queries; no closure, antichain, solver or projection code is reused.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use posetforge::boolean::{FiniteBooleanAlgebra, PartitionSubalgebra};
use posetforge::embeddings::ProjectionMap;
use posetforge::error::{Error, Result};
use posetforge::order::{FinitePoset, Order, Suborder};

/// Largest suborder [`brute_regularity`] enumerates antichains of.
pub const MAX_REGULARITY: usize = 20;
/// Largest algebra [`brute_subalgebra_closure`] enumerates subalgebras of.
pub const MAX_CLOSURE_ATOMS: usize = 5;
/// Largest algebra [`brute_game_tree`] searches.
pub const MAX_TREE_ATOMS: usize = 5;
/// Largest target whose antichains [`brute_projection`] enumerates.
pub const MAX_PROJECTION_TARGET: usize = 16;
/// Largest poset whose subsets [`brute_regular_open_count`] enumerates.
pub const MAX_REGULAR_OPEN_COUNT: usize = 20;

fn too_big(what: &str, n: usize, limit: usize) -> Error {
    Error::Size {
        what: what.to_string(),
        size: n as u128,
        bound: limit as u128,
    }
}

/// `a` and `b` have a common lower bound among `within`.
fn compatible_in<O: Order + ?Sized>(p: &O, within: &[usize], a: usize, b: usize) -> bool {
    within.iter().any(|&r| p.leq(r, a) && p.leq(r, b))
}

fn everything<O: Order + ?Sized>(p: &O) -> Vec<usize> {
    (0..p.size()).collect()
}

/// `{p : ∀q ≤ p ∃r ≤ q, r ∈ U}`.
pub fn brute_regular_open<O: Order + ?Sized>(p: &O, u: &FixedBitSet) -> FixedBitSet {
    let n = p.size();
    let mut out = FixedBitSet::with_capacity(n);
    for x in 0..n {
        let ok = (0..n)
            .filter(|&q| p.leq(q, x))
            .all(|q| (0..n).any(|r| p.leq(r, q) && u.contains(r)));
        out.set(x, ok);
    }
    out
}

/// Number of subsets `U` of `P` with `U` equal to its own regular open
/// closure, i.e. the size of the completion.
pub fn brute_regular_open_count<O: Order + ?Sized>(p: &O) -> Result<u64> {
    let n = p.size();
    if n > MAX_REGULAR_OPEN_COUNT {
        return Err(too_big("regular open enumeration", n, MAX_REGULAR_OPEN_COUNT));
    }
    let mut count = 0;
    for bits in 0u64..1 << n {
        let mut u = FixedBitSet::with_capacity(n);
        u.extend((0..n).filter(|&i| bits >> i & 1 == 1));
        if brute_regular_open(p, &u) == u {
            count += 1;
        }
    }
    Ok(count)
}

/// Every `q ≤ below` is compatible with some member of `d`.
pub fn brute_predense<O: Order + ?Sized>(p: &O, d: &FixedBitSet, below: usize) -> bool {
    let all = everything(p);
    (0..p.size())
        .filter(|&q| p.leq(q, below))
        .all(|q| d.ones().any(|x| compatible_in(p, &all, q, x)))
}

/// Every `q` in `P` is compatible with some member of `d`.
pub fn brute_dense_everywhere<O: Order + ?Sized>(p: &O, d: &FixedBitSet) -> bool {
    let all = everything(p);
    (0..p.size()).all(|q| d.ones().any(|x| compatible_in(p, &all, q, x)))
}

/// Every `q` in `P` has a member of `d` below it.
pub fn brute_dense<O: Order + ?Sized>(p: &O, d: &FixedBitSet) -> bool {
    (0..p.size()).all(|q| d.ones().any(|x| p.leq(x, q)))
}

/// Every maximal antichain of `Q` (incompatibility measured inside `Q`) is
/// a maximal antichain of `P`.
pub fn brute_regularity(p: &FinitePoset, q: &Suborder) -> Result<bool> {
    let members = q.members().to_vec();
    let k = members.len();
    if k > MAX_REGULARITY {
        return Err(too_big("suborder for antichain enumeration", k, MAX_REGULARITY));
    }
    let all = everything(p);
    let compat_q: Vec<Vec<bool>> = members
        .iter()
        .map(|&a| members.iter().map(|&b| compatible_in(p, &members, a, b)).collect())
        .collect();
    let compat_p: Vec<Vec<bool>> = all
        .iter()
        .map(|&a| all.iter().map(|&b| compatible_in(p, &all, a, b)).collect())
        .collect();
    for bits in 1u32..1 << k {
        let chosen: Vec<usize> = (0..k).filter(|&i| bits >> i & 1 == 1).collect();
        let antichain_q = chosen.iter().all(|&i| chosen.iter().all(|&j| i == j || !compat_q[i][j]));
        if !antichain_q {
            continue;
        }
        let maximal_q = (0..k).all(|i| chosen.iter().any(|&j| compat_q[i][j]));
        if !maximal_q {
            continue;
        }
        let antichain_p = chosen
            .iter()
            .all(|&i| chosen.iter().all(|&j| i == j || !compat_p[members[i]][members[j]]));
        let maximal_p = all.iter().all(|&x| chosen.iter().any(|&j| compat_p[x][members[j]]));
        if !(antichain_p && maximal_p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three clauses of a projection, each checked literally over the
/// whole source: monotone, lifting (including a root for every target
/// element), and for every maximal antichain `A` of the target the
/// elements mapped below some member of `A` form a predense set that
/// reaches below every member. Sources outside the map's domain are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteProjection {
    pub monotone: bool,
    pub lifting: bool,
    pub antichains: bool,
}

pub fn brute_projection<O: Order + ?Sized>(src: &O, pm: &ProjectionMap) -> Result<BruteProjection> {
    let t = pm.target();
    let tn = t.size();
    if tn > MAX_PROJECTION_TARGET {
        return Err(too_big("projection target", tn, MAX_PROJECTION_TARGET));
    }
    let dom: Vec<usize> = (0..src.size()).filter(|&s| pm.image(s).is_some()).collect();
    let img = |s: usize| pm.image(s).expect("in domain");

    let monotone = dom.iter().all(|&a| dom.iter().all(|&b| !src.leq(a, b) || t.leq(img(a), img(b))));

    let roots = (0..tn).all(|r| dom.iter().any(|&d| t.leq(img(d), r)));
    let lifting = roots
        && dom.iter().all(|&q| {
            (0..tn)
                .filter(|&r| t.leq(r, img(q)))
                .all(|r| dom.iter().any(|&q2| src.leq(q2, q) && t.leq(img(q2), r)))
        });

    let tall = everything(t);
    let sall = everything(src);
    let mut antichains = true;
    'outer: for bits in 1u32..1 << tn {
        let chosen: Vec<usize> = (0..tn).filter(|&i| bits >> i & 1 == 1).collect();
        let is_antichain = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| a == b || !compatible_in(t, &tall, a, b)));
        if !is_antichain || !(0..tn).all(|x| chosen.iter().any(|&a| compatible_in(t, &tall, x, a))) {
            continue;
        }
        let pullback: Vec<usize> = dom.iter().copied().filter(|&d| chosen.iter().any(|&a| t.leq(img(d), a))).collect();
        if !chosen.iter().all(|&a| pullback.iter().any(|&d| t.leq(img(d), a))) {
            antichains = false;
            break;
        }
        for x in 0..src.size() {
            if !pullback.iter().any(|&d| compatible_in(src, &sall, x, d)) {
                antichains = false;
                break 'outer;
            }
        }
    }
    Ok(BruteProjection {
        monotone,
        lifting,
        antichains,
    })
}

/// Set partitions of `0..n`, each as a list of block masks.
fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut blocks: Vec<u64> = Vec::new();
    fn go(i: usize, n: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            go(i + 1, n, blocks, out);
            blocks[b] &= !(1 << i);
        }
        blocks.push(1 << i);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    go(0, n, &mut blocks, &mut out);
    out
}

fn is_subalgebra(elements: &BTreeSet<u64>, one: u64) -> bool {
    elements.contains(&0)
        && elements.contains(&one)
        && elements.iter().all(|&x| {
            elements.contains(&(one & !x)) && elements.iter().all(|&y| elements.contains(&(x | y)) && elements.contains(&(x & y)))
        })
}

fn to_mask(x: &FixedBitSet) -> u64 {
    x.ones().fold(0, |m, i| m | 1 << i)
}

/// The intersection of every subalgebra of `B` that contains `X`.
///
/// Candidate subalgebras are generated from partitions of the atoms and
/// each is checked for closure under the operations before use.
pub fn brute_subalgebra_closure(b: &FiniteBooleanAlgebra, xs: &[FixedBitSet]) -> Result<PartitionSubalgebra> {
    let n = b.atom_count();
    if n > MAX_CLOSURE_ATOMS {
        return Err(too_big("algebra for subalgebra enumeration", n, MAX_CLOSURE_ATOMS));
    }
    let one = (1u64 << n) - 1;
    let want: Vec<u64> = xs.iter().map(to_mask).collect();
    let mut meet: Option<BTreeSet<u64>> = None;
    for blocks in set_partitions(n) {
        let k = blocks.len();
        let elements: BTreeSet<u64> = (0u64..1 << k)
            .map(|pick| (0..k).filter(|&i| pick >> i & 1 == 1).fold(0, |m, i| m | blocks[i]))
            .collect();
        if !is_subalgebra(&elements, one) || !want.iter().all(|x| elements.contains(x)) {
            continue;
        }
        meet = Some(match meet {
            None => elements,
            Some(m) => m.intersection(&elements).copied().collect(),
        });
    }
    let meet = meet.expect("B itself contains X");
    let nonzero: Vec<u64> = meet.iter().copied().filter(|&x| x != 0).collect();
    let minimal: Vec<u64> = nonzero
        .iter()
        .copied()
        .filter(|&x| !nonzero.iter().any(|&y| y != x && y & !x == 0))
        .collect();
    let blocks = minimal.iter().map(|&m| b.from_mask(m)).collect();
    PartitionSubalgebra::new(*b, blocks)
}

/// Bounded minimax for ℋ: I must bring the join of II's answers to `1`
/// within `horizon` rounds, otherwise II wins. Plays are searched move by
/// move; results are memoised on the join so far and the rounds left.
pub fn brute_game_tree(b: &FiniteBooleanAlgebra, horizon: usize) -> Result<posetforge::games::Player> {
    use posetforge::games::Player;
    let n = b.atom_count();
    if n > MAX_TREE_ATOMS {
        return Err(too_big("algebra for game tree", n, MAX_TREE_ATOMS));
    }
    let one = (1u64 << n) - 1;
    let mut memo = HashMap::new();
    fn i_wins(sum: u64, left: usize, one: u64, memo: &mut HashMap<(u64, usize), bool>) -> bool {
        if sum == one {
            return true;
        }
        if left == 0 {
            return false;
        }
        if let Some(&v) = memo.get(&(sum, left)) {
            return v;
        }
        let v = (1..=one).any(|a| (1..=a).filter(|&c| c & !a == 0).all(|c| i_wins(sum | c, left - 1, one, memo)));
        memo.insert((sum, left), v);
        v
    }
    Ok(if i_wins(0, horizon, one, &mut memo) {
        Player::I
    } else {
        Player::II
    })
}

/// Whether every play following I's `offer` reaches `1`, by depth-first
/// search over II's answers: a repeated join on the current path is a play
/// II can prolong forever.
pub fn brute_strategy_wins(atoms: usize, offer: impl Fn(u64) -> u64) -> bool {
    let one = (1u64 << atoms) - 1;
    fn dfs(sum: u64, one: u64, path: &mut Vec<u64>, offer: &dyn Fn(u64) -> u64) -> bool {
        if sum == one {
            return true;
        }
        if path.contains(&sum) {
            return false;
        }
        path.push(sum);
        let a = offer(sum);
        let ok = (1..=a).filter(|&c| c & !a == 0).all(|c| dfs(sum | c, one, path, offer));
        path.pop();
        ok
    }
    dfs(0, one, &mut Vec::new(), &offer)
}
