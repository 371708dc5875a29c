//! Regular suborders, projections inside finite Boolean algebras, and the
//! projection-map checker.
//!
//! A suborder `Q ⊆ P` is regular when every maximal antichain of `Q` is a
//! maximal antichain of `P`: it stays an antichain (incompatibility inside
//! `Q` survives in `P`) and it is predense in `P`. Three independent routes
//! decide this.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::boolean::{completion, Element, FiniteBooleanAlgebra, PartitionSubalgebra};
use crate::error::{Error, Result};
use crate::order::{extend_to_maximal_antichain, FinitePoset, Order, Suborder};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Maximal antichains of the suborder.
    Antichain,
    /// Existence of pseudo-projections.
    PseudoProjection,
    /// The induced map between completions.
    Completion,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Antichain, Route::PseudoProjection, Route::Completion];

    pub fn name(self) -> &'static str {
        match self {
            Route::Antichain => "antichain",
            Route::PseudoProjection => "pseudo",
            Route::Completion => "completion",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityWitness {
    /// `element` is incompatible with every member of the maximal antichain.
    Unmet { antichain: Vec<usize>, element: usize },
    /// `pair` is incompatible inside the suborder, yet `lower_bound` lies
    /// below both in the parent; `antichain` is a maximal antichain of the
    /// suborder containing the pair.
    Collapsed {
        antichain: Vec<usize>,
        pair: (usize, usize),
        lower_bound: usize,
    },
}

impl RegularityWitness {
    pub fn antichain(&self) -> &[usize] {
        match self {
            RegularityWitness::Unmet { antichain, .. } | RegularityWitness::Collapsed { antichain, .. } => antichain,
        }
    }
}

fn dotted(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

impl fmt::Display for RegularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularityWitness::Unmet { antichain, element } => {
                write!(f, "unmet;antichain={};element={}", dotted(antichain), element)
            }
            RegularityWitness::Collapsed {
                antichain,
                pair,
                lower_bound,
            } => write!(
                f,
                "collapsed;antichain={};pair={}.{};below={}",
                dotted(antichain),
                pair.0,
                pair.1,
                lower_bound
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub route: Route,
    pub witness: Option<RegularityWitness>,
}

impl RegularityVerdict {
    fn regular(route: Route) -> Self {
        RegularityVerdict {
            regular: true,
            route,
            witness: None,
        }
    }

    fn failed(route: Route, w: RegularityWitness) -> Self {
        RegularityVerdict {
            regular: false,
            route,
            witness: Some(w),
        }
    }

    pub fn report(&self, name: impl Into<String>) -> CheckReport {
        CheckReport::from_failure(name, self.witness.as_ref().map(|w| w.to_string()))
    }
}

fn intersects3(a: &FixedBitSet, b: &FixedBitSet, c: &FixedBitSet) -> bool {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .zip(c.as_slice())
        .any(|((x, y), z)| x & y & z != 0)
}

fn first_common(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    a.intersection(b).next()
}

/// Regular iff incompatibility inside `q` survives in `p` and the minimal
/// elements of `q` (a maximal antichain of `q` refining all the others) are
/// predense in `p`.
pub fn is_regular_suborder_antichain(p: &FinitePoset, q: &Suborder) -> Result<RegularityVerdict> {
    q.check_parent(p)?;
    let route = Route::Antichain;
    let m = q.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !intersects3(p.down(a), p.down(b), q.mask()) {
                if let Some(r) = first_common(p.down(a), p.down(b)) {
                    let antichain = extend_to_maximal_antichain(p, q, &[a, b]);
                    return Ok(RegularityVerdict::failed(
                        route,
                        RegularityWitness::Collapsed {
                            antichain,
                            pair: (a, b),
                            lower_bound: r,
                        },
                    ));
                }
            }
        }
    }
    let minimal = q.minimal_members(p);
    let mut set = p.empty_set();
    set.extend(minimal.iter().copied());
    let reached = p.minimal_below(&set);
    if let Some(x) = p.minimal().difference(&reached).next() {
        return Ok(RegularityVerdict::failed(
            route,
            RegularityWitness::Unmet {
                antichain: minimal,
                element: x,
            },
        ));
    }
    Ok(RegularityVerdict::regular(route))
}

/// Members of `q` below `a`, one row per member (indexed like `q.members()`).
fn rows_within(p: &FinitePoset, q: &Suborder) -> Vec<FixedBitSet> {
    q.members()
        .iter()
        .map(|&a| {
            let mut r = p.down(a).clone();
            r.intersect_with(q.mask());
            r
        })
        .collect()
}

fn pseudo_projection_with(p: &FinitePoset, q: &Suborder, rows: &[FixedBitSet], b: usize) -> Option<usize> {
    let compat = p.compatible_set(b);
    q.members()
        .iter()
        .zip(rows)
        .find(|(_, row)| row.is_subset(&compat))
        .map(|(&a, _)| a)
}

/// Some `a ∈ q` all of whose `q`-extensions are compatible with `b`; the
/// smallest such index, or `None`.
pub fn pseudo_projection(p: &FinitePoset, q: &Suborder, b: usize) -> Result<Option<usize>> {
    q.check_parent(p)?;
    p.check_index(b)?;
    Ok(pseudo_projection_with(p, q, &rows_within(p, q), b))
}

/// Regular iff every element of `p` has a pseudo-projection into `q` and
/// incompatibility inside `q` survives in `p`.
pub fn is_regular_suborder_pseudoprojection(p: &FinitePoset, q: &Suborder) -> Result<RegularityVerdict> {
    q.check_parent(p)?;
    let route = Route::PseudoProjection;
    let rows = rows_within(p, q);
    for b in 0..p.size() {
        if pseudo_projection_with(p, q, &rows, b).is_none() {
            // With no pseudo-projection, b is incompatible with every minimal
            // member of q, and those form a maximal antichain of q.
            let minimal: Vec<usize> = q
                .members()
                .iter()
                .zip(&rows)
                .filter(|(_, r)| r.count_ones(..) == 1)
                .map(|(&a, _)| a)
                .collect();
            return Ok(RegularityVerdict::failed(
                route,
                RegularityWitness::Unmet {
                    antichain: minimal,
                    element: b,
                },
            ));
        }
    }
    for (i, &a) in q.members().iter().enumerate() {
        let compat = p.compatible_set(a);
        for (j, &b) in q.members().iter().enumerate().skip(i + 1) {
            if compat.contains(b) && rows[i].is_disjoint(&rows[j]) {
                let r = first_common(p.down(a), p.down(b)).expect("compatible pair has a lower bound");
                return Ok(RegularityVerdict::failed(
                    route,
                    RegularityWitness::Collapsed {
                        antichain: extend_to_maximal_antichain(p, q, &[a, b]),
                        pair: (a, b),
                        lower_bound: r,
                    },
                ));
            }
        }
    }
    Ok(RegularityVerdict::regular(route))
}

/// Regular iff the inclusion extends to a complete embedding
/// `e : RO(q) → RO(p)`.
///
/// `e` is forced on atoms by `e ∘ embed_q = embed_p`, so the check is: the
/// forced images of distinct atoms are disjoint, `e` commutes with the two
/// embeddings on every member of `q`, and the atoms of `RO(q)` (a maximal
/// antichain there) are sent to a family whose join is `1`.
pub fn is_regular_suborder_completion(p: &FinitePoset, q: &Suborder) -> Result<RegularityVerdict> {
    q.check_parent(p)?;
    let route = Route::Completion;
    let big = completion(p);
    let small = completion(&p.induced(q));
    let members = q.members();
    let generators: Vec<usize> = small.atom_generators().iter().map(|&g| members[g]).collect();
    let images: Vec<&Element> = generators.iter().map(|&g| big.embed(g)).collect();
    let pa = big.algebra();
    let atom_generator = |atom: usize| big.atom_generators()[atom];

    let mut covered = pa.zero();
    for (i, img) in images.iter().enumerate() {
        if let Some(x) = covered.intersection(img).next() {
            let j = (0..i).find(|&j| images[j].contains(x)).expect("overlap comes from an earlier atom");
            let pair = (generators[j], generators[i]);
            return Ok(RegularityVerdict::failed(
                route,
                RegularityWitness::Collapsed {
                    antichain: extend_to_maximal_antichain(p, q, &[pair.0, pair.1]),
                    pair,
                    lower_bound: atom_generator(x),
                },
            ));
        }
        covered.union_with(img);
    }

    for (local, &member) in members.iter().enumerate() {
        let mut image = pa.zero();
        for i in small.embed(local).ones() {
            image.union_with(images[i]);
        }
        let target = big.embed(member);
        if let Some(x) = target.difference(&image).next() {
            let x_gen = atom_generator(x);
            let witness = match (0..images.len()).find(|&j| images[j].contains(x)) {
                Some(j) => RegularityWitness::Collapsed {
                    antichain: extend_to_maximal_antichain(p, q, &[member, generators[j]]),
                    pair: (member, generators[j]),
                    lower_bound: x_gen,
                },
                None => RegularityWitness::Unmet {
                    antichain: generators.clone(),
                    element: x_gen,
                },
            };
            return Ok(RegularityVerdict::failed(route, witness));
        }
    }

    if let Some(x) = pa.complement(&covered).ones().next() {
        return Ok(RegularityVerdict::failed(
            route,
            RegularityWitness::Unmet {
                antichain: generators,
                element: atom_generator(x),
            },
        ));
    }
    Ok(RegularityVerdict::regular(route))
}

pub fn is_regular_suborder(p: &FinitePoset, q: &Suborder, route: Route) -> Result<RegularityVerdict> {
    match route {
        Route::Antichain => is_regular_suborder_antichain(p, q),
        Route::PseudoProjection => is_regular_suborder_pseudoprojection(p, q),
        Route::Completion => is_regular_suborder_completion(p, q),
    }
}

/// Reports for all three routes, named `<prefix>.<route>`.
pub fn regularity_reports(p: &FinitePoset, q: &Suborder, prefix: &str) -> Result<Vec<CheckReport>> {
    Route::ALL
        .into_iter()
        .map(|r| Ok(is_regular_suborder(p, q, r)?.report(format!("{prefix}.{}", r.name()))))
        .collect()
}

/// The least element of `a` above `x`: the union of the blocks meeting `x`.
pub fn upper_projection(b: &FiniteBooleanAlgebra, a: &PartitionSubalgebra, x: &Element) -> Result<Element> {
    check_ambient(b, a, x)?;
    let mut out = b.zero();
    for blk in a.blocks().iter().filter(|blk| !blk.is_disjoint(x)) {
        out.union_with(blk);
    }
    Ok(out)
}

/// The greatest element of `a` below `x`: the union of the blocks inside `x`.
pub fn lower_projection(b: &FiniteBooleanAlgebra, a: &PartitionSubalgebra, x: &Element) -> Result<Element> {
    check_ambient(b, a, x)?;
    let mut out = b.zero();
    for blk in a.blocks().iter().filter(|blk| blk.is_subset(x)) {
        out.union_with(blk);
    }
    Ok(out)
}

fn check_ambient(b: &FiniteBooleanAlgebra, a: &PartitionSubalgebra, x: &Element) -> Result<()> {
    b.check(x)?;
    if a.algebra() != *b {
        return Err(Error::AmbientMismatch("subalgebra of a different algebra".into()));
    }
    Ok(())
}

/// A map from a subset of a source poset (its domain, which should be dense)
/// into a target poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMap {
    image: Vec<Option<usize>>,
    target: FinitePoset,
}

impl ProjectionMap {
    pub fn new(source_size: usize, pairs: impl IntoIterator<Item = (usize, usize)>, target: FinitePoset) -> Result<Self> {
        let mut image = vec![None; source_size];
        for (s, t) in pairs {
            if s >= source_size {
                return Err(Error::Index {
                    index: s,
                    len: source_size,
                });
            }
            target.check_index(t)?;
            match image[s] {
                Some(old) if old != t => {
                    return Err(Error::Domain(format!("source {s} mapped to both {old} and {t}")));
                }
                _ => image[s] = Some(t),
            }
        }
        Ok(ProjectionMap { image, target })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        ProjectionMap {
            image: (0..p.size()).map(Some).collect(),
            target: p.clone(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.image.len()
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn image(&self, s: usize) -> Option<usize> {
        self.image.get(s).copied().flatten()
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.image.len()).filter(|&s| self.image[s].is_some()).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.image.iter().enumerate().filter_map(|(s, t)| t.map(|t| (s, t))).collect()
    }

    /// The same map with one entry replaced.
    pub fn with_entry(&self, s: usize, t: usize) -> Result<Self> {
        if self.image(s).is_none() {
            return Err(Error::Domain(format!("{s} is outside the domain")));
        }
        self.target.check_index(t)?;
        let mut m = self.clone();
        m.image[s] = Some(t);
        Ok(m)
    }
}

/// Restricts which source elements must have a domain element below them,
/// which target elements must lie above an image, and which `(q, r)` pairs
/// the lifting clause quantifies over. Truncated forcing posets use this to
/// exclude conditions with no room left below them.
pub struct ProjectionScope<'a> {
    pub name: String,
    pub density: Box<dyn Fn(usize) -> bool + 'a>,
    pub roots: Box<dyn Fn(usize) -> bool + 'a>,
    pub lifting: Box<dyn Fn(usize, usize) -> bool + 'a>,
}

impl<'a> ProjectionScope<'a> {
    pub fn full() -> Self {
        ProjectionScope {
            name: "full".into(),
            density: Box::new(|_| true),
            roots: Box::new(|_| true),
            lifting: Box::new(|_, _| true),
        }
    }
}

/// Outcome of [`check_projection_map`]: one optional failure witness per clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCheck {
    pub scope: String,
    pub monotone: Option<String>,
    pub lifting: Option<String>,
    pub antichains: Option<String>,
}

impl ProjectionCheck {
    pub fn passed(&self) -> bool {
        self.monotone.is_none() && self.lifting.is_none() && self.antichains.is_none()
    }

    pub fn reports(&self, prefix: &str) -> Vec<CheckReport> {
        vec![
            CheckReport::from_failure(format!("{prefix}.monotone"), self.monotone.clone()),
            CheckReport::from_failure(format!("{prefix}.lifting"), self.lifting.clone()),
            CheckReport::from_failure(format!("{prefix}.antichains"), self.antichains.clone()),
        ]
    }
}

/// Checks that `pm` behaves like a projection from `src` onto its target:
///
/// * monotone on the domain;
/// * lifting: every target element lies above some image, and for every `q`
///   in the domain and `r ≤ map(q)` some `q' ≤ q` in the domain has
///   `map(q') ≤ r`;
/// * for every maximal antichain `A` of the target, every member has some
///   image below it and the domain elements mapped below members of `A`
///   are predense in `src`.
///
/// The domain must be dense in `src` (within `scope.density`), otherwise a
/// domain error is returned.
pub fn check_projection_map<O: Order + ?Sized>(src: &O, pm: &ProjectionMap, scope: &ProjectionScope) -> Result<ProjectionCheck> {
    if pm.source_size() != src.size() {
        return Err(Error::AmbientMismatch(format!(
            "map over {} source elements checked against a poset of {}",
            pm.source_size(),
            src.size()
        )));
    }
    let t = &pm.target;
    let dom = pm.domain();
    let img = |s: usize| pm.image[s].expect("domain element");

    for x in 0..src.size() {
        if (scope.density)(x) && !dom.iter().any(|&d| src.leq(d, x)) {
            return Err(Error::Domain(format!("map domain is not dense: nothing below {x}")));
        }
    }

    let below_in_dom: Vec<Vec<usize>> = dom
        .iter()
        .map(|&q| dom.iter().copied().filter(|&q2| src.leq(q2, q)).collect())
        .collect();

    let mut monotone = None;
    'outer: for (i, &q) in dom.iter().enumerate() {
        for &q2 in &below_in_dom[i] {
            if !t.leq(img(q2), img(q)) {
                monotone = Some(format!("below={q2};above={q};images={}.{}", img(q2), img(q)));
                break 'outer;
            }
        }
    }

    let mut images = t.empty_set();
    images.extend(dom.iter().map(|&d| img(d)));
    let uncovered = (0..t.size()).find(|&r| (scope.roots)(r) && t.down(r).is_disjoint(&images));

    let mut lifting = uncovered.map(|r| format!("root;r={r}"));
    if lifting.is_none() {
        'lift: for (i, &q) in dom.iter().enumerate() {
            let mut reach = t.empty_set();
            for &q2 in &below_in_dom[i] {
                reach.union_with(t.up(img(q2)));
            }
            for r in t.down(img(q)).ones() {
                if !reach.contains(r) && (scope.lifting)(q, r) {
                    lifting = Some(format!("q={q};r={r}"));
                    break 'lift;
                }
            }
        }
    }

    let mut antichains = uncovered.map(|r| {
        let a = extend_to_maximal_antichain(t, &Suborder::full(t), &[r]);
        format!("antichain={};empty_pullback={r}", dotted(&a))
    });
    if antichains.is_none() {
        // A maximal antichain avoiding every image compatible with p exists
        // exactly when no domain element compatible with p maps to a
        // minimal element of the target; the minimal elements are then such
        // an antichain.
        let to_minimal: Vec<usize> = dom.iter().copied().filter(|&d| t.minimal().contains(img(d))).collect();
        if let Some(&p) = dom.iter().find(|&&p| !to_minimal.iter().any(|&d| src.compatible(p, d))) {
            antichains = Some(format!("antichain={};element={p}", dotted(&t.minimal_elements())));
        }
    }

    Ok(ProjectionCheck {
        scope: scope.name.clone(),
        monotone,
        lifting,
        antichains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::make_poset;

    /// Cohen conditions on 2 coordinates, encoded as base-3 digits
    /// (0 = undefined, 1 = value 0, 2 = value 1).
    fn cohen2() -> FinitePoset {
        FinitePoset::from_fn(9, |a, b| {
            (0..2).all(|i| {
                let (da, db) = (a / 3usize.pow(i) % 3, b / 3usize.pow(i) % 3);
                db == 0 || da == db
            })
        })
        .unwrap()
    }

    fn coord0(p: &FinitePoset) -> Suborder {
        Suborder::new(p, (0..9).filter(|c| c / 3 == 0)).unwrap()
    }

    fn verdicts(p: &FinitePoset, q: &Suborder) -> Vec<bool> {
        Route::ALL.iter().map(|&r| is_regular_suborder(p, q, r).unwrap().regular).collect()
    }

    #[test]
    fn standard_instances() {
        let a2 = FinitePoset::antichain(2).unwrap();
        assert_eq!(verdicts(&a2, &Suborder::full(&a2)), vec![true; 3]);
        let single = Suborder::new(&a2, [0]).unwrap();
        assert_eq!(verdicts(&a2, &single), vec![false; 3]);
        let v = is_regular_suborder_antichain(&a2, &single).unwrap();
        assert_eq!(
            v.witness,
            Some(RegularityWitness::Unmet {
                antichain: vec![0],
                element: 1
            })
        );
        let c = cohen2();
        assert_eq!(verdicts(&c, &coord0(&c)), vec![true; 3]);
    }

    #[test]
    fn collapsed_incompatibility_is_not_regular() {
        let v = make_poset(3, &[(2, 0), (2, 1)]).unwrap();
        let q = Suborder::new(&v, [0, 1]).unwrap();
        for r in Route::ALL {
            let verdict = is_regular_suborder(&v, &q, r).unwrap();
            assert!(!verdict.regular, "{r:?}");
            assert!(matches!(verdict.witness, Some(RegularityWitness::Collapsed { lower_bound: 2, .. })));
        }
    }

    #[test]
    fn completion_route_sees_hidden_minimal_elements() {
        // 1 ≤ 0 and 2 ≤ 0 with 1 ⊥ 2; the suborder {0, 1} identifies 0 with 1.
        let p = make_poset(3, &[(1, 0), (2, 0)]).unwrap();
        let q = Suborder::new(&p, [0, 1]).unwrap();
        assert_eq!(verdicts(&p, &q), vec![false; 3]);
    }

    #[test]
    fn pseudo_projection_examples() {
        let c = cohen2();
        let q = coord0(&c);
        // b = {0↦0, 1↦1}: digit0 = 1, digit1 = 2.
        let b = 1 + 2 * 3;
        assert_eq!(pseudo_projection(&c, &q, b).unwrap(), Some(1));
        for x in q.members() {
            let a = pseudo_projection(&c, &q, *x).unwrap().unwrap();
            assert!(q.members().iter().filter(|&&y| c.leq(y, a)).all(|&y| c.compatible(y, *x)));
        }
        let a2 = FinitePoset::antichain(2).unwrap();
        assert_eq!(pseudo_projection(&a2, &Suborder::new(&a2, [0]).unwrap(), 1).unwrap(), None);
    }

    #[test]
    fn projections_in_algebras() {
        let b = FiniteBooleanAlgebra::new(4).unwrap();
        let a = crate::boolean::generated_subalgebra(&b, &[b.element(&[0, 1]).unwrap()]).unwrap();
        let x = b.element(&[0, 2]).unwrap();
        assert_eq!(upper_projection(&b, &a, &x).unwrap(), b.one());
        let y = b.element(&[0, 1, 2]).unwrap();
        assert_eq!(lower_projection(&b, &a, &y).unwrap(), b.element(&[0, 1]).unwrap());
        assert_eq!(lower_projection(&b, &a, &b.one()).unwrap(), b.one());
        let t = PartitionSubalgebra::trivial(b);
        assert_eq!(upper_projection(&b, &t, &x).unwrap(), b.one());
        assert_eq!(lower_projection(&b, &t, &x).unwrap(), b.zero());
        assert_eq!(
            upper_projection(&b, &a, &b.element(&[0, 1]).unwrap()).unwrap(),
            b.element(&[0, 1]).unwrap()
        );
    }

    #[test]
    fn projection_map_examples() {
        let c = cohen2();
        let id = ProjectionMap::identity(&c);
        assert!(check_projection_map(&c, &id, &ProjectionScope::full()).unwrap().passed());

        let c1 = make_poset(3, &[(1, 0), (2, 0)]).unwrap();
        let restrict = ProjectionMap::new(9, (0..9).map(|s| (s, s % 3)), c1).unwrap();
        assert!(check_projection_map(&c, &restrict, &ProjectionScope::full()).unwrap().passed());

        let a2 = FinitePoset::antichain(2).unwrap();
        let constant = ProjectionMap::new(9, (0..9).map(|s| (s, 0)), a2).unwrap();
        let out = check_projection_map(&c, &constant, &ProjectionScope::full()).unwrap();
        assert!(out.monotone.is_none());
        assert_eq!(out.lifting.as_deref(), Some("root;r=1"));
        assert_eq!(out.antichains.as_deref(), Some("antichain=0.1;empty_pullback=1"));
    }

    #[test]
    fn non_dense_domain_is_rejected() {
        let c = cohen2();
        let pm = ProjectionMap::new(9, [(0, 0)], c.clone()).unwrap();
        assert!(matches!(
            check_projection_map(&c, &pm, &ProjectionScope::full()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mutation_breaks_restriction() {
        let c = cohen2();
        let c1 = make_poset(3, &[(1, 0), (2, 0)]).unwrap();
        let restrict = ProjectionMap::new(9, (0..9).map(|s| (s, s % 3)), c1).unwrap();
        for s in 0..9 {
            for t in 0..3 {
                if t != s % 3 {
                    let m = restrict.with_entry(s, t).unwrap();
                    assert!(!check_projection_map(&c, &m, &ProjectionScope::full()).unwrap().passed());
                }
            }
        }
    }
}
