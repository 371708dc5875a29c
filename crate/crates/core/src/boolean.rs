//! Finite Boolean algebras as powerset algebras over atoms, their
//! subalgebras as partitions of the atoms, and the regular open completion of
//! a finite poset.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{check_size, Error, Result, MAX_ENUMERATED};
use crate::order::{regular_open_closure, FinitePoset};

/// An element of a powerset algebra: the set of atoms below it.
pub type Element = FixedBitSet;

/// The powerset algebra on `atom_count` atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlgebra {
    atoms: usize,
}

impl FiniteBooleanAlgebra {
    pub fn new(atom_count: usize) -> Result<Self> {
        if atom_count == 0 {
            return Err(Error::Domain("a Boolean algebra needs at least one atom".into()));
        }
        Ok(FiniteBooleanAlgebra { atoms: atom_count })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    /// `2^atom_count`, or `None` when it does not fit in 128 bits.
    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.atoms as u32)
    }

    pub fn zero(&self) -> Element {
        FixedBitSet::with_capacity(self.atoms)
    }

    pub fn one(&self) -> Element {
        let mut e = self.zero();
        e.insert_range(..);
        e
    }

    pub fn atom(&self, i: usize) -> Result<Element> {
        self.element(&[i])
    }

    pub fn element(&self, atoms: &[usize]) -> Result<Element> {
        let mut e = self.zero();
        for &a in atoms {
            if a >= self.atoms {
                return Err(Error::Index { index: a, len: self.atoms });
            }
            e.insert(a);
        }
        Ok(e)
    }

    /// The element whose atoms are the set bits of `mask`.
    pub fn from_mask(&self, mask: u64) -> Element {
        let mut e = self.zero();
        e.extend((0..self.atoms.min(64)).filter(|i| mask >> i & 1 == 1));
        e
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.atoms {
            return Err(Error::AmbientMismatch(format!(
                "element over {} atoms used in an algebra with {}",
                x.len(),
                self.atoms
            )));
        }
        Ok(())
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        let mut e = x.clone();
        e.intersect_with(y);
        e
    }

    pub fn join(&self, x: &Element, y: &Element) -> Element {
        let mut e = x.clone();
        e.union_with(y);
        e
    }

    pub fn complement(&self, x: &Element) -> Element {
        let mut e = x.clone();
        e.toggle_range(..);
        e
    }

    /// `x - y`, i.e. `x · −y`.
    pub fn minus(&self, x: &Element, y: &Element) -> Element {
        let mut e = x.clone();
        e.difference_with(y);
        e
    }

    pub fn le(&self, x: &Element, y: &Element) -> bool {
        x.is_subset(y)
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        x.is_clear()
    }

    /// All elements in mask order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let size = self.size().unwrap_or(u128::MAX);
        check_size("powerset algebra", size, MAX_ENUMERATED)?;
        Ok((0..size as u64).map(|m| self.from_mask(m)).collect())
    }
}

/// Renders an element as `{0,2,3}`.
pub fn show(x: &Element) -> String {
    let parts: Vec<String> = x.ones().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// A subalgebra of a powerset algebra, given by the partition of the atoms
/// into the atoms of the subalgebra. Blocks are sorted by their least atom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartitionSubalgebra {
    algebra: FiniteBooleanAlgebra,
    blocks: Vec<FixedBitSet>,
}

impl fmt::Debug for PartitionSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(show).collect();
        write!(f, "PartitionSubalgebra[{}]", blocks.join(" "))
    }
}

impl PartitionSubalgebra {
    pub fn new(algebra: FiniteBooleanAlgebra, blocks: Vec<Element>) -> Result<Self> {
        let mut seen = algebra.zero();
        for b in &blocks {
            algebra.check(b)?;
            if b.is_clear() {
                return Err(Error::Domain("partition blocks must be nonempty".into()));
            }
            if !seen.is_disjoint(b) {
                return Err(Error::Domain("partition blocks must be disjoint".into()));
            }
            seen.union_with(b);
        }
        if seen != algebra.one() {
            return Err(Error::Domain("partition blocks must cover every atom".into()));
        }
        Ok(Self::canonical(algebra, blocks))
    }

    fn canonical(algebra: FiniteBooleanAlgebra, mut blocks: Vec<Element>) -> Self {
        blocks.sort_by_key(|b| b.minimum());
        PartitionSubalgebra { algebra, blocks }
    }

    /// `{0, 1}`.
    pub fn trivial(algebra: FiniteBooleanAlgebra) -> Self {
        PartitionSubalgebra {
            algebra,
            blocks: vec![algebra.one()],
        }
    }

    /// The whole algebra.
    pub fn full(algebra: FiniteBooleanAlgebra) -> Self {
        let blocks = (0..algebra.atom_count())
            .map(|i| algebra.atom(i).expect("atom index in range"))
            .collect();
        PartitionSubalgebra { algebra, blocks }
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        self.algebra
    }

    pub fn blocks(&self) -> &[Element] {
        &self.blocks
    }

    /// `x` is a union of blocks.
    pub fn contains(&self, x: &Element) -> bool {
        self.blocks.iter().all(|b| b.is_subset(x) || b.is_disjoint(x))
    }

    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.blocks.len() as u32)
    }

    /// Union of the blocks selected by `mask`.
    pub fn element_from_blocks(&self, mask: u64) -> Element {
        let mut e = self.algebra.zero();
        for (i, b) in self.blocks.iter().enumerate() {
            if i < 64 && mask >> i & 1 == 1 {
                e.union_with(b);
            }
        }
        e
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        let size = self.size().unwrap_or(u128::MAX);
        check_size("subalgebra", size, MAX_ENUMERATED)?;
        Ok((0..size as u64).map(|m| self.element_from_blocks(m)).collect())
    }

    /// Splits every block by `x`.
    fn refine(&self, x: &Element) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() * 2);
        for b in &self.blocks {
            let inside = self.algebra.meet(b, x);
            let outside = self.algebra.minus(b, x);
            for part in [inside, outside] {
                if !part.is_clear() {
                    blocks.push(part);
                }
            }
        }
        Self::canonical(self.algebra, blocks)
    }

    fn check_same(&self, other: &PartitionSubalgebra) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AmbientMismatch(format!(
                "subalgebras of algebras with {} and {} atoms",
                self.algebra.atom_count(),
                other.algebra.atom_count()
            )));
        }
        Ok(())
    }
}

/// `⟨X⟩`: the blocks are the nonzero signed meets `±x₁ · … · ±x_k`.
pub fn generated_subalgebra(b: &FiniteBooleanAlgebra, xs: &[Element]) -> Result<PartitionSubalgebra> {
    let mut a = PartitionSubalgebra::trivial(*b);
    for x in xs {
        b.check(x)?;
        a = a.refine(x);
    }
    Ok(a)
}

/// `A(b) = {a₁·b + (a₂ − b) : a₁, a₂ ∈ A}`.
pub fn adjoin(a: &PartitionSubalgebra, x: &Element) -> Result<PartitionSubalgebra> {
    a.algebra.check(x)?;
    Ok(a.refine(x))
}

/// All `2^|X|` signed meets of the distinct members of `X` are nonzero.
pub fn is_independent_set(b: &FiniteBooleanAlgebra, xs: &[Element]) -> Result<bool> {
    let mut distinct: Vec<&Element> = Vec::new();
    for x in xs {
        b.check(x)?;
        if !distinct.contains(&x) {
            distinct.push(x);
        }
    }
    let k = distinct.len();
    // 2^k pairwise disjoint nonzero meets need at least 2^k atoms.
    if k >= usize::BITS as usize || (1usize << k) > b.atom_count() {
        return Ok(false);
    }
    for signs in 0u64..(1 << k) {
        let mut m = b.one();
        for (i, x) in distinct.iter().enumerate() {
            if signs >> i & 1 == 1 {
                m.intersect_with(x);
            } else {
                m.difference_with(x);
            }
        }
        if m.is_clear() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a · u ≠ 0 ≠ a − u` for every `a ∈ A⁺`; it suffices to look at blocks.
pub fn is_independent_over(b: &FiniteBooleanAlgebra, a: &PartitionSubalgebra, u: &Element) -> Result<bool> {
    b.check(u)?;
    if a.algebra != *b {
        return Err(Error::AmbientMismatch("subalgebra of a different algebra".into()));
    }
    Ok(a.blocks.iter().all(|blk| !blk.is_disjoint(u) && !blk.is_subset(u)))
}

/// Every positive element of each subalgebra has a positive minorant in the
/// other. Checked on blocks, the minimal positive elements.
pub fn are_codense(b: &FiniteBooleanAlgebra, a1: &PartitionSubalgebra, a2: &PartitionSubalgebra) -> Result<bool> {
    a1.check_same(a2)?;
    if a1.algebra != *b {
        return Err(Error::AmbientMismatch("subalgebras of a different algebra".into()));
    }
    let has_minorant = |x: &Element, other: &PartitionSubalgebra| other.blocks.iter().any(|y| y.is_subset(x));
    Ok(a1.blocks.iter().all(|x| has_minorant(x, a2)) && a2.blocks.iter().all(|x| has_minorant(x, a1)))
}

/// Largest free generator count accepted by [`free_algebra`].
pub const MAX_FREE_GENERATORS: usize = 20;

/// The free algebra on `k` generators: atoms are the functions `k → 2`
/// (encoded as bit masks) and `x_i = {s : s(i) = 1}`.
pub fn free_algebra(k: usize) -> Result<(FiniteBooleanAlgebra, Vec<Element>)> {
    check_size("free algebra generators", k as u128, MAX_FREE_GENERATORS as u128)?;
    let b = FiniteBooleanAlgebra::new(1 << k)?;
    let gens = (0..k)
        .map(|i| {
            let mut x = b.zero();
            x.extend((0..(1usize << k)).filter(|s| s >> i & 1 == 1));
            x
        })
        .collect();
    Ok((b, gens))
}

/// The regular open algebra of a finite poset.
///
/// Its atoms are the regular open closures of the minimal elements of the
/// source, so an element is stored as a set of atoms and converted to a
/// regular open subset of the source on demand. `embed(p)` is the set of
/// minimal elements below `p`.
#[derive(Clone, Debug)]
pub struct RegularOpenAlgebra {
    source: FinitePoset,
    atoms: Vec<usize>,
    embed: Vec<Element>,
}

/// Builds the completion `B(P)` of a finite poset.
pub fn completion(p: &FinitePoset) -> RegularOpenAlgebra {
    let atoms = p.minimal_elements();
    let position: Vec<Option<usize>> = {
        let mut pos = vec![None; p.size()];
        for (i, &m) in atoms.iter().enumerate() {
            pos[m] = Some(i);
        }
        pos
    };
    let embed = (0..p.size())
        .map(|x| {
            let mut e = FixedBitSet::with_capacity(atoms.len());
            e.extend(p.down(x).intersection(p.minimal()).filter_map(|m| position[m]));
            e
        })
        .collect();
    RegularOpenAlgebra {
        source: p.clone(),
        atoms,
        embed,
    }
}

impl RegularOpenAlgebra {
    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn algebra(&self) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(self.atoms.len()).expect("finite posets have a minimal element")
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// The minimal source element generating each atom.
    pub fn atom_generators(&self) -> &[usize] {
        &self.atoms
    }

    pub fn size(&self) -> Option<u128> {
        self.algebra().size()
    }

    /// Image of a source element, as a set of atoms.
    pub fn embed(&self, x: usize) -> &Element {
        &self.embed[x]
    }

    /// The regular open subset of the source represented by `e`.
    pub fn to_set(&self, e: &Element) -> FixedBitSet {
        let mut out = self.source.empty_set();
        out.extend((0..self.source.size()).filter(|&x| self.embed[x].is_subset(e)));
        out
    }

    /// The atoms of a regular open subset. Errors if `u` is not regular open.
    pub fn from_set(&self, u: &FixedBitSet) -> Result<Element> {
        if regular_open_closure(&self.source, u)? != *u {
            return Err(Error::Domain("set is not regular open".into()));
        }
        let mut e = FixedBitSet::with_capacity(self.atoms.len());
        e.extend(self.atoms.iter().enumerate().filter(|(_, &m)| u.contains(m)).map(|(i, _)| i));
        Ok(e)
    }

    /// Every regular open subset of the source, in atom-mask order.
    pub fn elements(&self) -> Result<Vec<FixedBitSet>> {
        Ok(self.algebra().elements()?.iter().map(|e| self.to_set(e)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::make_poset;

    fn b4() -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::new(4).unwrap()
    }

    // Atoms 1..4 of the examples are 0..3 here.
    fn el(b: &FiniteBooleanAlgebra, a: &[usize]) -> Element {
        b.element(a).unwrap()
    }

    fn blocks(a: &PartitionSubalgebra) -> Vec<Vec<usize>> {
        a.blocks().iter().map(|b| b.ones().collect()).collect()
    }

    #[test]
    fn generated_examples() {
        let b = b4();
        assert_eq!(blocks(&generated_subalgebra(&b, &[]).unwrap()), vec![vec![0, 1, 2, 3]]);
        let g = generated_subalgebra(&b, &[el(&b, &[0, 1]), el(&b, &[0, 2])]).unwrap();
        assert_eq!(g, PartitionSubalgebra::full(b));
        let g = generated_subalgebra(&b, &[el(&b, &[0, 1])]).unwrap();
        assert_eq!(blocks(&g), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn adjoin_examples() {
        let b = b4();
        let a = generated_subalgebra(&b, &[el(&b, &[0, 1])]).unwrap();
        assert_eq!(adjoin(&a, &el(&b, &[2, 3])).unwrap(), a);
        assert_eq!(adjoin(&a, &el(&b, &[0, 2])).unwrap(), PartitionSubalgebra::full(b));
        let b2 = FiniteBooleanAlgebra::new(2).unwrap();
        let t = PartitionSubalgebra::trivial(b2);
        assert_eq!(adjoin(&t, &el(&b2, &[0])).unwrap(), PartitionSubalgebra::full(b2));
    }

    #[test]
    fn independence_examples() {
        let b = b4();
        assert!(is_independent_set(&b, &[el(&b, &[0])]).unwrap());
        assert!(is_independent_set(&b, &[el(&b, &[0, 1]), el(&b, &[0, 2])]).unwrap());
        assert!(!is_independent_set(&b, &[b.one()]).unwrap());
        let t = PartitionSubalgebra::trivial(b);
        assert!(is_independent_over(&b, &t, &el(&b, &[1])).unwrap());
        let a = generated_subalgebra(&b, &[el(&b, &[0, 1])]).unwrap();
        assert!(!is_independent_over(&b, &a, &el(&b, &[0, 1])).unwrap());
        assert!(is_independent_over(&b, &a, &el(&b, &[0, 2])).unwrap());
    }

    #[test]
    fn codensity_examples() {
        let b = b4();
        let a1 = generated_subalgebra(&b, &[el(&b, &[0, 1])]).unwrap();
        let a2 = generated_subalgebra(&b, &[el(&b, &[0, 2])]).unwrap();
        assert!(are_codense(&b, &a1, &a1).unwrap());
        assert!(!are_codense(&b, &a1, &a2).unwrap());
        let b2 = FiniteBooleanAlgebra::new(2).unwrap();
        assert!(!are_codense(&b2, &PartitionSubalgebra::trivial(b2), &PartitionSubalgebra::full(b2)).unwrap());
        assert!(are_codense(&b, &a1, &PartitionSubalgebra::trivial(b2)).is_err());
    }

    #[test]
    fn free_algebra_examples() {
        let (b, g) = free_algebra(0).unwrap();
        assert_eq!((b.size(), g.len()), (Some(2), 0));
        let (b, _) = free_algebra(1).unwrap();
        assert_eq!(b.size(), Some(4));
        let (b, g) = free_algebra(2).unwrap();
        assert_eq!(b.size(), Some(16));
        assert!(is_independent_set(&b, &g).unwrap());
        assert_eq!(generated_subalgebra(&b, &g).unwrap(), PartitionSubalgebra::full(b));
        assert!(free_algebra(MAX_FREE_GENERATORS + 1).is_err());
    }

    #[test]
    fn completion_examples() {
        let a3 = FinitePoset::antichain(3).unwrap();
        assert_eq!(completion(&a3).atom_count(), 3);
        let c1 = make_poset(3, &[(1, 0), (2, 0)]).unwrap();
        let ro = completion(&c1);
        assert_eq!((ro.atom_count(), ro.size()), (2, Some(4)));
        let sets: Vec<Vec<usize>> = ro.elements().unwrap().iter().map(|s| s.ones().collect()).collect();
        assert_eq!(sets, vec![vec![], vec![1], vec![2], vec![0, 1, 2]]);
    }

    #[test]
    fn projections_of_sets_round_trip() {
        let c1 = make_poset(3, &[(1, 0), (2, 0)]).unwrap();
        let ro = completion(&c1);
        for e in ro.algebra().elements().unwrap() {
            assert_eq!(ro.from_set(&ro.to_set(&e)).unwrap(), e);
        }
        assert!(ro.from_set(&c1.set_of(&[0]).unwrap()).is_err());
    }

    #[test]
    fn rendering() {
        let b = b4();
        assert_eq!(show(&el(&b, &[0, 3])), "{0,3}");
        assert_eq!(show(&b.zero()), "{}");
    }
}
