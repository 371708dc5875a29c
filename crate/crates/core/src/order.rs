//! Finite posets and the order-theoretic vocabulary of forcing.
//!
//! Smaller means stronger: `leq(p, q)` says that `p` extends `q`. Two
//! elements are compatible when they have a common lower bound. Nothing here
//! assumes a top element.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Read-only access to a finite order, whether stored as a relation matrix or
/// computed from structured conditions.
pub trait Order {
    fn size(&self) -> usize;

    fn leq(&self, a: usize, b: usize) -> bool;

    fn compatible(&self, a: usize, b: usize) -> bool {
        (0..self.size()).any(|r| self.leq(r, a) && self.leq(r, b))
    }
}

/// A finite partial order on `0..size`, stored as down-set and up-set rows.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    minimal: FixedBitSet,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<(usize, usize)> = (0..self.size())
            .flat_map(|p| self.down[p].ones().filter(move |&q| q != p).map(move |q| (q, p)))
            .collect();
        f.debug_struct("FinitePoset")
            .field("size", &self.size())
            .field("strictly_below", &rel)
            .finish()
    }
}

impl Order for FinitePoset {
    fn size(&self) -> usize {
        self.down.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        !self.down[a].is_disjoint(&self.down[b])
    }
}

/// Builds the reflexive-transitive closure of `relations`, where `(lo, hi)`
/// declares `lo ≤ hi`.
pub fn make_poset(size: usize, relations: &[(usize, usize)]) -> Result<FinitePoset> {
    FinitePoset::new(size, relations)
}

impl FinitePoset {
    pub fn new(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("a poset needs at least one element".into()));
        }
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); size];
        for &(lo, hi) in relations {
            for i in [lo, hi] {
                if i >= size {
                    return Err(Error::Index { index: i, len: size });
                }
            }
            if lo != hi {
                below[hi].push(lo);
                above[lo].push(hi);
            }
        }
        let mut pending: Vec<usize> = below.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..size).filter(|&i| pending[i] == 0).collect();
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for (i, row) in down.iter_mut().enumerate() {
            row.insert(i);
        }
        let mut processed = 0;
        while let Some(lo) = queue.pop_front() {
            processed += 1;
            let row = down[lo].clone();
            for &hi in &above[lo] {
                down[hi].union_with(&row);
                pending[hi] -= 1;
                if pending[hi] == 0 {
                    queue.push_back(hi);
                }
            }
        }
        if processed < size {
            return Err(Error::Cycle(find_cycle(&below, &pending)));
        }
        Ok(Self::from_rows(down))
    }

    /// Builds a poset from `leq(a, b)` queries, validating the axioms.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let down = (0..size)
            .map(|p| {
                let mut row = FixedBitSet::with_capacity(size);
                row.extend((0..size).filter(|&q| leq(q, p)));
                row
            })
            .collect();
        Self::from_down_sets(down)
    }

    /// Builds a poset from explicit down-sets, validating the axioms.
    pub fn from_down_sets(down: Vec<FixedBitSet>) -> Result<Self> {
        let n = down.len();
        if n == 0 {
            return Err(Error::Domain("a poset needs at least one element".into()));
        }
        for (p, row) in down.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Domain(format!("row {p} has length {}", row.len())));
            }
            if !row.contains(p) {
                return Err(Error::Domain(format!("relation is not reflexive at {p}")));
            }
        }
        for (p, row) in down.iter().enumerate() {
            for q in row.ones() {
                if q != p && down[q].contains(p) {
                    return Err(Error::Cycle(vec![q, p]));
                }
                if !down[q].is_subset(row) {
                    let r = down[q].difference(row).next().unwrap_or(q);
                    return Err(Error::Domain(format!(
                        "relation is not transitive: {r} ≤ {q} ≤ {p} but not {r} ≤ {p}"
                    )));
                }
            }
        }
        Ok(Self::from_rows(down))
    }

    fn from_rows(down: Vec<FixedBitSet>) -> Self {
        let n = down.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut minimal = FixedBitSet::with_capacity(n);
        for (p, row) in down.iter().enumerate() {
            for q in row.ones() {
                up[q].insert(p);
            }
            if row.count_ones(..) == 1 {
                minimal.insert(p);
            }
        }
        FinitePoset { down, up, minimal }
    }

    /// `0 < 1 < … < n-1` read downwards: element 0 is the strongest.
    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &rel)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    pub fn size(&self) -> usize {
        self.down.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        !self.down[a].is_disjoint(&self.down[b])
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.size() {
            Ok(())
        } else {
            Err(Error::Index {
                index: i,
                len: self.size(),
            })
        }
    }

    pub fn check_set(&self, set: &FixedBitSet) -> Result<()> {
        if set.len() != self.size() {
            return Err(Error::AmbientMismatch(format!(
                "set over {} elements used with a poset of {}",
                set.len(),
                self.size()
            )));
        }
        Ok(())
    }

    /// `{q : q ≤ p}`.
    pub fn down(&self, p: usize) -> &FixedBitSet {
        &self.down[p]
    }

    /// `{q : p ≤ q}`.
    pub fn up(&self, p: usize) -> &FixedBitSet {
        &self.up[p]
    }

    pub fn minimal(&self) -> &FixedBitSet {
        &self.minimal
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        self.minimal.ones().collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, members: &[usize]) -> Result<FixedBitSet> {
        let mut s = self.empty_set();
        for &m in members {
            self.check_index(m)?;
            s.insert(m);
        }
        Ok(s)
    }

    /// Minimal elements lying below some member of `set`.
    pub fn minimal_below(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for s in set.ones() {
            out.union_with(&self.down[s]);
        }
        out.intersect_with(&self.minimal);
        out
    }

    /// Every element compatible with `p`.
    pub fn compatible_set(&self, p: usize) -> FixedBitSet {
        let mut out = self.empty_set();
        for m in self.down[p].intersection(&self.minimal) {
            out.union_with(&self.up[m]);
        }
        out
    }

    pub fn down_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for s in set.ones() {
            out.union_with(&self.down[s]);
        }
        out
    }

    pub fn up_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for s in set.ones() {
            out.union_with(&self.up[s]);
        }
        out
    }

    /// Cover pairs `(lo, hi)`: `lo < hi` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for hi in 0..self.size() {
            let mut strict = self.down[hi].clone();
            strict.set(hi, false);
            let mut deeper = self.empty_set();
            for mid in strict.ones() {
                let mut d = self.down[mid].clone();
                d.set(mid, false);
                deeper.union_with(&d);
            }
            out.extend(strict.difference(&deeper).map(|lo| (lo, hi)));
        }
        out
    }

    /// The suborder as a poset in its own right; element `i` of the result is
    /// `members()[i]`.
    pub fn induced(&self, q: &Suborder) -> FinitePoset {
        let m = q.members();
        let pos: HashMap<usize, usize> = m.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let down = m
            .iter()
            .map(|&p| {
                let mut row = FixedBitSet::with_capacity(m.len());
                row.extend(self.down[p].intersection(q.mask()).map(|x| pos[&x]));
                row
            })
            .collect();
        FinitePoset::from_rows(down)
    }
}

fn find_cycle(below: &[Vec<usize>], pending: &[usize]) -> Vec<usize> {
    let start = (0..below.len()).find(|&i| pending[i] > 0).unwrap_or(0);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if let Some(&at) = seen.get(&v) {
            let mut cycle = path[at..].to_vec();
            cycle.reverse();
            return cycle;
        }
        seen.insert(v, path.len());
        path.push(v);
        v = match below[v].iter().copied().find(|&u| pending[u] > 0) {
            Some(u) => u,
            None => return path,
        };
    }
}

/// A nonempty subset of a poset carrying the restricted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suborder {
    members: Vec<usize>,
    mask: FixedBitSet,
}

impl Suborder {
    pub fn new(parent: &FinitePoset, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = parent.empty_set();
        for m in members {
            parent.check_index(m)?;
            mask.insert(m);
        }
        Self::from_mask(parent, mask)
    }

    pub fn from_mask(parent: &FinitePoset, mask: FixedBitSet) -> Result<Self> {
        parent.check_set(&mask)?;
        if mask.is_clear() {
            return Err(Error::Domain("a suborder must be nonempty".into()));
        }
        Ok(Suborder {
            members: mask.ones().collect(),
            mask,
        })
    }

    pub fn full(parent: &FinitePoset) -> Self {
        let mask = parent.full_set();
        Suborder {
            members: mask.ones().collect(),
            mask,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn check_parent(&self, parent: &FinitePoset) -> Result<()> {
        if self.mask.len() != parent.size() {
            return Err(Error::AmbientMismatch(format!(
                "suborder of a {}-element poset used with a {}-element poset",
                self.mask.len(),
                parent.size()
            )));
        }
        Ok(())
    }

    /// Elements of the suborder that are minimal in the restricted order.
    pub fn minimal_members(&self, parent: &FinitePoset) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&q| parent.down(q).intersection(&self.mask).count() == 1)
            .collect()
    }
}

pub fn compatible(p: &FinitePoset, a: usize, b: usize) -> Result<bool> {
    p.check_index(a)?;
    p.check_index(b)?;
    Ok(p.compatible(a, b))
}

/// Common lower bound inside the suborder.
pub fn compatible_within(p: &FinitePoset, q: &Suborder, a: usize, b: usize) -> bool {
    p.down(a).intersection(p.down(b)).any(|r| q.contains(r))
}

/// Members of `q` compatible in `p` but not inside `q`, if any.
pub fn first_lost_compatibility(p: &FinitePoset, q: &Suborder) -> Option<(usize, usize)> {
    let m = q.members();
    m.iter().enumerate().find_map(|(i, &a)| {
        m[i + 1..]
            .iter()
            .find(|&&b| p.compatible(a, b) && !compatible_within(p, q, a, b))
            .map(|&b| (a, b))
    })
}

/// Enlarges `q` by the greatest-index common lower bound of each pair that
/// is compatible in `p` but not in `q`, until no such pair is left. The
/// result computes compatibility exactly as `p` does, the way a subalgebra
/// computes meets exactly as its algebra does.
pub fn compatibility_closure(p: &FinitePoset, q: &Suborder) -> Suborder {
    let mut mask = q.mask().clone();
    loop {
        let cur = Suborder::from_mask(p, mask.clone()).expect("same parent");
        match first_lost_compatibility(p, &cur) {
            None => return cur,
            Some((a, b)) => {
                let r = p.down(a).intersection(p.down(b)).next_back().expect("compatible");
                mask.insert(r);
            }
        }
    }
}

/// Every antichain of `within` (incompatibility computed inside `within`)
/// that cannot be enlarged inside `within`. Each antichain is sorted and the
/// list is in lexicographic order.
pub fn maximal_antichains(p: &FinitePoset, within: &Suborder) -> Result<Vec<Vec<usize>>> {
    within.check_parent(p)?;
    let m = within.members();
    let k = m.len();
    let mut adj = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in (i + 1)..k {
            if !compatible_within(p, within, m[i], m[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut out = Vec::new();
    let mut all = FixedBitSet::with_capacity(k);
    all.insert_range(..);
    bron_kerbosch(&adj, &mut Vec::new(), all, FixedBitSet::with_capacity(k), &mut out);
    let mut out: Vec<Vec<usize>> = out
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|i| m[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[FixedBitSet], r: &mut Vec<usize>, mut cand: FixedBitSet, mut excl: FixedBitSet, out: &mut Vec<Vec<usize>>) {
    if cand.is_clear() && excl.is_clear() {
        out.push(r.clone());
        return;
    }
    let pivot = cand
        .ones()
        .chain(excl.ones())
        .max_by_key(|&u| adj[u].intersection(&cand).count())
        .expect("candidate or excluded set is nonempty");
    let branch: Vec<usize> = cand.difference(&adj[pivot]).collect();
    for v in branch {
        r.push(v);
        let mut c = cand.clone();
        c.intersect_with(&adj[v]);
        let mut x = excl.clone();
        x.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, c, x, out);
        r.pop();
        cand.set(v, false);
        excl.insert(v);
    }
}

/// Extends `seed` greedily (in index order) to a maximal antichain of
/// `within`, using incompatibility inside `within`.
pub fn extend_to_maximal_antichain(p: &FinitePoset, within: &Suborder, seed: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = seed.to_vec();
    for &q in within.members() {
        if !out.contains(&q) && out.iter().all(|&a| !compatible_within(p, within, a, q)) {
            out.push(q);
        }
    }
    out.sort_unstable();
    out
}

/// Every `q ≤ below` is compatible with some member of `d`.
pub fn is_predense(p: &FinitePoset, d: &FixedBitSet, below: usize) -> Result<bool> {
    p.check_set(d)?;
    p.check_index(below)?;
    let reached = p.minimal_below(d);
    Ok(p.down(below).intersection(p.minimal()).all(|m| reached.contains(m)))
}

/// Every element has a member of `d` below it.
pub fn is_dense_subset(p: &FinitePoset, d: &FixedBitSet) -> Result<bool> {
    p.check_set(d)?;
    Ok(p.minimal().is_subset(d))
}

/// First element of `scope` (in index order) with no member of the dense
/// candidate below it. Works on any [`Order`].
pub fn first_undominated<O: Order + ?Sized>(o: &O, dense: &[usize], scope: impl Fn(usize) -> bool) -> Option<usize> {
    (0..o.size()).filter(|&p| scope(p)).find(|&p| !dense.iter().any(|&d| o.leq(d, p)))
}

/// `{p : ∀q ≤ p ∃r ≤ q, r ∈ u}`.
///
/// In a finite poset every `q` sits above a minimal element, so `p` belongs
/// to the closure exactly when all minimal elements below `p` lie in `u`.
pub fn regular_open_closure(p: &FinitePoset, u: &FixedBitSet) -> Result<FixedBitSet> {
    p.check_set(u)?;
    let mut out = p.empty_set();
    for x in 0..p.size() {
        if p.down(x).intersection(p.minimal()).all(|m| u.contains(m)) {
            out.insert(x);
        }
    }
    Ok(out)
}

/// `{p : p is incompatible with every member of u}`.
pub fn incompatible_with_all(p: &FinitePoset, u: &FixedBitSet) -> Result<FixedBitSet> {
    p.check_set(u)?;
    let reach = p.minimal_below(u);
    let mut out = p.empty_set();
    for x in 0..p.size() {
        if p.down(x).is_disjoint(&reach) {
            out.insert(x);
        }
    }
    Ok(out)
}

/// `u` equals its own regular open closure.
pub fn is_regular_open(p: &FinitePoset, u: &FixedBitSet) -> Result<bool> {
    Ok(&regular_open_closure(p, u)? == u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparativeQuotient {
    pub quotient: FinitePoset,
    /// Class of each source element; classes are numbered by first member.
    pub class_map: Vec<usize>,
}

/// Identifies elements compatible with exactly the same elements; class `a`
/// lies below class `b` when everything below a representative of `a` is
/// compatible with a representative of `b`.
pub fn separative_quotient(p: &FinitePoset) -> SeparativeQuotient {
    let profiles: Vec<FixedBitSet> = (0..p.size()).map(|x| p.compatible_set(x)).collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut class_map = Vec::with_capacity(p.size());
    let mut seen: HashMap<&FixedBitSet, usize> = HashMap::new();
    for (x, prof) in profiles.iter().enumerate() {
        let c = *seen.entry(prof).or_insert_with(|| {
            reps.push(x);
            reps.len() - 1
        });
        class_map.push(c);
    }
    let quotient = FinitePoset::from_fn(reps.len(), |a, b| {
        let (pa, pb) = (reps[a], reps[b]);
        p.down(pa).ones().all(|r| profiles[pb].contains(r))
    })
    .expect("compatibility-profile order is a partial order");
    SeparativeQuotient { quotient, class_map }
}

/// Whenever `p ≰ q` some `r ≤ p` is incompatible with `q`.
pub fn is_separative(p: &FinitePoset) -> bool {
    (0..p.size()).all(|a| (0..p.size()).all(|b| p.leq(a, b) || p.down(a).ones().any(|r| !p.compatible(r, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compatibility_closure_adds_lower_bounds() {
        // 4 < 2 < 5 < 3 and 2 < 6; 3 and 6 meet only at 2 and 4.
        let p = make_poset(8, &[(4, 2), (2, 5), (5, 3), (2, 6)]).unwrap();
        let q = Suborder::new(&p, [0, 1, 3, 6, 7]).unwrap();
        assert_eq!(first_lost_compatibility(&p, &q), Some((3, 6)));
        let c = compatibility_closure(&p, &q);
        assert_eq!(c.members(), &[0, 1, 3, 4, 6, 7]);
        assert_eq!(first_lost_compatibility(&p, &c), None);
    }

    fn v_poset() -> FinitePoset {
        make_poset(3, &[(2, 0), (2, 1)]).unwrap()
    }

    fn cohen1() -> FinitePoset {
        // 0 = ∅, 1 = {0↦0}, 2 = {0↦1}
        make_poset(3, &[(1, 0), (2, 0)]).unwrap()
    }

    fn set(p: &FinitePoset, m: &[usize]) -> FixedBitSet {
        p.set_of(m).unwrap()
    }

    #[test]
    fn construction_examples() {
        let v = v_poset();
        assert!(v.leq(2, 0) && v.leq(2, 1) && !v.leq(0, 1) && !v.leq(1, 0));
        assert_eq!(make_poset(1, &[]).unwrap().size(), 1);
        assert!(matches!(make_poset(2, &[(0, 1), (1, 0)]), Err(Error::Cycle(_))));
        assert!(matches!(make_poset(2, &[(0, 2)]), Err(Error::Index { index: 2, .. })));
    }

    #[test]
    fn cycle_witness_is_a_cycle() {
        let Err(Error::Cycle(c)) = make_poset(4, &[(0, 1), (1, 2), (2, 0), (3, 0)]) else {
            panic!("expected a cycle");
        };
        let mut c = c;
        c.sort_unstable();
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn closure_is_transitive() {
        let p = make_poset(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p.leq(0, 3));
        assert_eq!(p.minimal_elements(), vec![0]);
    }

    #[test]
    fn compatibility_examples() {
        assert!(compatible(&v_poset(), 0, 1).unwrap());
        assert!(!compatible(&FinitePoset::antichain(2).unwrap(), 0, 1).unwrap());
        assert!(compatible(&v_poset(), 0, 5).is_err());
    }

    #[test]
    fn antichain_examples() {
        let a2 = FinitePoset::antichain(2).unwrap();
        assert_eq!(maximal_antichains(&a2, &Suborder::full(&a2)).unwrap(), vec![vec![0, 1]]);
        let c3 = FinitePoset::chain(3).unwrap();
        assert_eq!(
            maximal_antichains(&c3, &Suborder::full(&c3)).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let c = cohen1();
        assert_eq!(maximal_antichains(&c, &Suborder::full(&c)).unwrap(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn antichains_use_internal_incompatibility() {
        // Inside {0, 1} of the V-poset the two elements have no common lower
        // bound, so they form an antichain there.
        let v = v_poset();
        let q = Suborder::new(&v, [0, 1]).unwrap();
        assert_eq!(maximal_antichains(&v, &q).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn predensity_examples() {
        let c = cohen1();
        assert!(is_predense(&c, &c.full_set(), 0).unwrap());
        let a2 = FinitePoset::antichain(2).unwrap();
        assert!(!is_predense(&a2, &set(&a2, &[0]), 1).unwrap());
        assert!(is_predense(&a2, &set(&a2, &[0]), 0).unwrap());
    }

    #[test]
    fn density_examples() {
        let c3 = FinitePoset::chain(3).unwrap();
        assert!(is_dense_subset(&c3, &set(&c3, &[0])).unwrap());
        assert!(!is_dense_subset(&c3, &set(&c3, &[1])).unwrap());
        assert!(is_dense_subset(&c3, &c3.full_set()).unwrap());
        assert_eq!(first_undominated(&c3, &[1], |_| true), Some(0));
    }

    #[test]
    fn regular_open_examples() {
        let v = v_poset();
        assert_eq!(regular_open_closure(&v, &v.empty_set()).unwrap(), v.empty_set());
        assert_eq!(regular_open_closure(&v, &set(&v, &[2])).unwrap(), v.full_set());
        let c = cohen1();
        assert_eq!(regular_open_closure(&c, &set(&c, &[1])).unwrap(), set(&c, &[1]));
        assert_eq!(incompatible_with_all(&c, &set(&c, &[1])).unwrap(), set(&c, &[2]));
    }

    #[test]
    fn separative_quotient_examples() {
        let v = v_poset();
        let sq = separative_quotient(&v);
        assert_eq!(sq.quotient.size(), 1);
        assert_eq!(sq.class_map, vec![0, 0, 0]);
        let c = cohen1();
        let sq = separative_quotient(&c);
        assert_eq!(sq.quotient, c);
        assert_eq!(sq.class_map, vec![0, 1, 2]);
        assert!(is_separative(&c) && !is_separative(&v));
    }

    #[test]
    fn covers_and_induced() {
        let p = make_poset(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let mut cov = p.covers();
        cov.sort_unstable();
        assert_eq!(cov, vec![(0, 1), (0, 3), (1, 2)]);
        let q = Suborder::new(&p, [0, 2]).unwrap();
        assert_eq!(p.induced(&q), FinitePoset::chain(2).unwrap());
    }

    #[test]
    fn from_fn_rejects_non_orders() {
        assert!(FinitePoset::from_fn(2, |a, b| a != b || a == b).is_err());
        assert!(FinitePoset::from_fn(3, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2)).is_err());
        assert_eq!(FinitePoset::from_fn(2, |a, b| a <= b).unwrap(), FinitePoset::chain(2).unwrap());
    }
}
