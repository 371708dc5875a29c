//! Finite trees on sets of ordinals below `n` whose tree order respects the
//! ordinal order, and their specialisations: colourings into `c` colours
//! that are injective on chains.
//!
//! Both posets are ordered by reverse extension: a stronger condition has
//! more nodes, the same tree order on the old nodes and the same colours.
//! For a cut `α`, `D_α` holds the conditions with every node below `α`; the
//! restriction to `α` maps the set `E` below onto `D_α`.
//!
//! `E` asks that every colour used above a node `β < α` is already used
//! above `β` below `α`. Reaching `E` needs fresh nodes between the top of
//! `t ∩ α` and `α`, one per missing colour, so its density is checked on
//! the conditions where that room exists.

use fixedbitset::FixedBitSet;

use super::{param_usize, parse_params, show_bits, Bundled, BundledMap, DenseSet, MapScope, NamedPoset, ZooInstance};
use crate::embeddings::ProjectionMap;
use crate::error::{check_size, max_elements, Error, Result};
use crate::order::Suborder;
use crate::report::CheckReport;

pub const MAX_ORDINALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TennenbaumParams {
    pub n: usize,
    pub colours: usize,
}

impl Default for TennenbaumParams {
    fn default() -> Self {
        TennenbaumParams { n: 5, colours: 3 }
    }
}

impl TennenbaumParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["n", "c"])?;
        let d = Self::default();
        let p = TennenbaumParams {
            n: param_usize(&m, "n", d.n)?,
            colours: param_usize(&m, "c", d.colours)?,
        };
        check_size("tree ordinals", p.n as u128, MAX_ORDINALS as u128)?;
        Ok(p)
    }
}

/// A node's immediate predecessor in the tree, and its colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub parent: Option<u8>,
    pub colour: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub nodes: Vec<Option<Node>>,
}

impl Condition {
    pub fn empty(n: usize) -> Self {
        Condition { nodes: vec![None; n] }
    }

    /// Builds a condition from `(node, parent, colour)` triples, refusing a
    /// parent that is not an earlier node and colourings that repeat along
    /// a chain.
    pub fn new(n: usize, nodes: &[(usize, Option<usize>, Option<u8>)]) -> Result<Self> {
        let mut c = Condition::empty(n);
        for &(b, parent, colour) in nodes {
            if b >= n || c.nodes[b].is_some() {
                return Err(Error::Domain(format!("node {b} is out of range or repeated")));
            }
            c.nodes[b] = Some(Node {
                parent: parent.map(|a| a as u8),
                colour,
            });
        }
        for (b, node) in c.nodes.iter().enumerate() {
            let Some(node) = node else { continue };
            if let Some(a) = node.parent {
                let a = a as usize;
                if a >= b || c.nodes[a].is_none() {
                    return Err(Error::Domain(format!(
                        "{a} below {b} does not respect the ordinal order or is not a node"
                    )));
                }
            }
        }
        let colours: Vec<_> = c.nodes.iter().flatten().map(|x| x.colour.is_some()).collect();
        if colours.iter().any(|&x| x) && !colours.iter().all(|&x| x) {
            return Err(Error::Domain("either every node or none is coloured".into()));
        }
        for b in 0..n {
            if let Some(col) = c.nodes[b].and_then(|x| x.colour) {
                if c.ancestors(b).iter().any(|&a| c.nodes[a].and_then(|x| x.colour) == Some(col)) {
                    return Err(Error::Domain(format!("colour {col} repeats on the chain below {b}")));
                }
            }
        }
        Ok(c)
    }

    pub fn support(&self) -> u32 {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_some())
            .fold(0, |m, (b, _)| m | 1 << b)
    }

    /// Strict tree predecessors of `b`, nearest first.
    pub fn ancestors(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.nodes[b].and_then(|x| x.parent);
        while let Some(a) = cur {
            out.push(a as usize);
            cur = self.nodes[a as usize].and_then(|x| x.parent);
        }
        out
    }

    fn ancestor_mask(&self, b: usize) -> u32 {
        self.ancestors(b).iter().fold(0, |m, a| m | 1 << a)
    }

    fn colour(&self, b: usize) -> Option<u8> {
        self.nodes[b].and_then(|x| x.colour)
    }

    /// Colours of the nodes above `b` lying in `within`, as a mask.
    fn colours_above(&self, b: usize, within: u32) -> u32 {
        (0..self.nodes.len())
            .filter(|&g| within >> g & 1 == 1 && self.nodes[g].is_some() && self.ancestor_mask(g) >> b & 1 == 1)
            .filter_map(|g| self.colour(g))
            .fold(0, |m, c| m | 1 << c)
    }

    pub fn restrict(&self, alpha: usize) -> Condition {
        Condition {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(b, x)| if b < alpha { *x } else { None })
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(b, x)| {
                x.map(|x| {
                    let p = x.parent.map_or("-".to_string(), |a| a.to_string());
                    match x.colour {
                        Some(c) => format!("{b}<{p}:{c}"),
                        None => format!("{b}<{p}"),
                    }
                })
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Precomputed shape used by the order test.
#[derive(Clone, Debug)]
struct Shape {
    support: u32,
    ancestors: Vec<u32>,
    colours: Vec<Option<u8>>,
}

impl Shape {
    fn of(c: &Condition) -> Self {
        let n = c.nodes.len();
        Shape {
            support: c.support(),
            ancestors: (0..n).map(|b| c.ancestor_mask(b)).collect(),
            colours: (0..n).map(|b| c.colour(b)).collect(),
        }
    }

    /// `self` extends `other`: more nodes, the same order and colours on
    /// the old ones.
    fn leq(&self, other: &Shape) -> bool {
        other.support & !self.support == 0
            && (0..self.ancestors.len())
                .filter(|b| other.support >> b & 1 == 1)
                .all(|b| self.ancestors[b] & other.support == other.ancestors[b] && self.colours[b] == other.colours[b])
    }
}

pub fn leq(a: &Condition, b: &Condition) -> bool {
    Shape::of(a).leq(&Shape::of(b))
}

/// All trees on subsets of `0..n`, each coloured in every admissible way
/// when `colours` is `Some`.
pub fn conditions(n: usize, colours: Option<usize>) -> Result<Vec<Condition>> {
    check_size("tree ordinals", n as u128, MAX_ORDINALS as u128)?;
    let mut out = Vec::new();
    for t in 0..1u32 << n {
        let members: Vec<usize> = (0..n).filter(|b| t >> b & 1 == 1).collect();
        grow(&members, 0, colours, &mut Condition::empty(n), &mut out);
        check_size("tree conditions", out.len() as u128, max_elements() as u128)?;
    }
    Ok(out)
}

fn grow(members: &[usize], i: usize, colours: Option<usize>, cur: &mut Condition, out: &mut Vec<Condition>) {
    if i == members.len() {
        out.push(cur.clone());
        return;
    }
    let b = members[i];
    let parents = std::iter::once(None).chain(members[..i].iter().map(|&a| Some(a as u8)));
    for parent in parents {
        cur.nodes[b] = Some(Node { parent, colour: None });
        match colours {
            None => grow(members, i + 1, colours, cur, out),
            Some(c) => {
                let used: Vec<u8> = cur.ancestors(b).iter().filter_map(|&a| cur.colour(a)).collect();
                for col in (0..c as u8).filter(|col| !used.contains(col)) {
                    cur.nodes[b] = Some(Node { parent, colour: Some(col) });
                    grow(members, i + 1, colours, cur, out);
                }
            }
        }
    }
    cur.nodes[b] = None;
}

/// For every node `β < α`, the colours used above it in `t` are used above
/// it below `α`.
pub fn in_e(c: &Condition, alpha: usize) -> bool {
    missing_colours(c, alpha) == 0
}

/// Total over nodes `β < α` of the colours used above `β` but not above it
/// below `α`.
pub fn missing_colours(c: &Condition, alpha: usize) -> u32 {
    let below = (1u32 << alpha) - 1;
    let all = c.support();
    (0..alpha)
        .filter(|&b| all >> b & 1 == 1)
        .map(|b| (c.colours_above(b, all) & !c.colours_above(b, below)).count_ones())
        .sum()
}

/// Unused ordinals between the top node below `α` and `α`.
pub fn room_below(c: &Condition, alpha: usize) -> u32 {
    let below = c.support() & ((1u32 << alpha) - 1);
    if below == 0 {
        return alpha as u32;
    }
    let top = 31 - below.leading_zeros();
    alpha as u32 - top - 1
}

/// The conditions on which `E` is checked for density.
pub fn e_regime(c: &Condition, alpha: usize) -> bool {
    missing_colours(c, alpha) <= room_below(c, alpha)
}

pub fn cuts(n: usize) -> std::ops::Range<usize> {
    1..n
}

fn mask_of(n: usize, pred: impl Fn(usize) -> bool) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    m.extend((0..n).filter(|&i| pred(i)));
    m
}

pub fn instance(params: &TennenbaumParams) -> Result<ZooInstance> {
    let n = params.n;
    let conds = conditions(n, Some(params.colours))?;
    let shapes: Vec<Shape> = conds.iter().map(Shape::of).collect();
    let d = super::materialize("specialisation poset", &shapes, Shape::leq)?;
    let labels: Vec<String> = conds.iter().map(Condition::label).collect();
    let mut inst = ZooInstance::new(
        "tennenbaum",
        format!("n={n} c={}", params.colours),
        NamedPoset {
            name: "D".into(),
            poset: d.clone(),
            labels: labels.clone(),
        },
    );
    let index: std::collections::HashMap<&Condition, usize> = conds.iter().enumerate().map(|(i, c)| (c, i)).collect();
    for alpha in cuts(n) {
        let below = (1u32 << alpha) - 1;
        let d_alpha = Suborder::new(&d, (0..conds.len()).filter(|&i| shapes[i].support & !below == 0))?;
        let members = d_alpha.members().to_vec();
        let e = mask_of(conds.len(), |i| in_e(&conds[i], alpha));
        let regime = mask_of(conds.len(), |i| e_regime(&conds[i], alpha));
        let pairs = e.ones().map(|i| {
            let r = index[&conds[i].restrict(alpha)];
            (i, members.binary_search(&r).expect("restriction lies below the cut"))
        });
        let map = ProjectionMap::new(conds.len(), pairs.collect::<Vec<_>>(), d.induced(&d_alpha))?;
        inst.maps.push(BundledMap {
            name: format!("pr{alpha}"),
            on: 0,
            map,
            target_labels: members.iter().map(|&i| labels[i].clone()).collect(),
            scope: Some(MapScope {
                name: "room_below_cut".into(),
                density: Some(regime.clone()),
                lift_sources: None,
                lift_targets: None,
            }),
        });
        inst.suborders.push(Bundled {
            name: format!("D{alpha}"),
            on: 0,
            item: d_alpha,
        });
        inst.dense_sets.push(Bundled {
            name: format!("E{alpha}"),
            on: 0,
            item: DenseSet {
                set: e,
                scope: Some(regime),
            },
        });
    }

    let trees = conditions(n, None)?;
    let bare = super::materialize("tree poset", &trees, leq)?;
    let on = inst.posets.len();
    for alpha in cuts(n) {
        let below = (1u32 << alpha) - 1;
        inst.suborders.push(Bundled {
            name: format!("tree.T{alpha}"),
            on,
            item: Suborder::new(&bare, (0..trees.len()).filter(|&i| trees[i].support() & !below == 0))?,
        });
    }
    inst.posets.push(NamedPoset {
        name: "tree".into(),
        poset: bare,
        labels: trees.iter().map(Condition::label).collect(),
    });
    Ok(inst)
}

pub fn checks(params: &TennenbaumParams) -> Result<Vec<CheckReport>> {
    let inst = instance(params)?;
    let mut out = inst.standard_checks()?;
    for (alpha, d) in cuts(params.n).zip(inst.dense_sets.iter()) {
        let scope = d.item.scope.as_ref().expect("scoped");
        let outside = inst.poset().size() - scope.count_ones(..);
        out.push(CheckReport::skip(
            format!("tennenbaum.E{alpha}.outside_regime"),
            format!("{outside}_conditions_without_room"),
        ));
    }
    Ok(out)
}

/// The projection clauses on `E` with no density requirement at all.
pub fn unscoped_clauses(inst: &ZooInstance, alpha: usize) -> Result<(Option<String>, Option<String>)> {
    let m = inst
        .maps
        .iter()
        .find(|m| m.name == format!("pr{alpha}"))
        .ok_or_else(|| Error::Domain(format!("no cut {alpha}")))?;
    let scope = crate::embeddings::ProjectionScope {
        name: "none".into(),
        density: Box::new(|_| false),
        roots: Box::new(|_| true),
        lifting: Box::new(|_, _| true),
    };
    let c = crate::embeddings::check_projection_map(inst.poset(), &m.map, &scope)?;
    Ok((c.monotone, c.lifting))
}

pub fn show_support(c: &Condition) -> String {
    show_bits(c.support())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinitePoset;

    #[test]
    fn sizes() {
        assert_eq!(conditions(5, None).unwrap().len(), 326);
        assert_eq!(conditions(5, Some(3)).unwrap().len(), 12_586);
        assert_eq!(conditions(0, Some(3)).unwrap(), vec![Condition::empty(0)]);
    }

    #[test]
    fn constructor_respects_ordinals() {
        let t = Condition::new(3, &[(0, None, None), (2, Some(0), None)]).unwrap();
        let u = Condition::new(3, &[(0, None, None), (1, Some(0), None), (2, Some(0), None)]).unwrap();
        assert!(leq(&u, &t));
        assert!(Condition::new(3, &[(0, None, None), (1, Some(2), None), (2, Some(0), None)]).is_err());
        assert!(Condition::new(2, &[(0, None, Some(1)), (1, Some(0), Some(1))]).is_err());
    }

    #[test]
    fn empty_condition_is_the_maximum() {
        for c in [None, Some(2)] {
            let conds = conditions(3, c).unwrap();
            let top = conds.iter().position(|x| *x == Condition::empty(3)).unwrap();
            let p = FinitePoset::from_fn(conds.len(), |a, b| leq(&conds[a], &conds[b])).unwrap();
            assert!((0..p.size()).all(|x| p.leq(x, top)));
        }
    }

    #[test]
    fn reattaching_a_node_is_not_an_extension() {
        let a = Condition::new(3, &[(0, None, None), (2, None, None)]).unwrap();
        let b = Condition::new(3, &[(0, None, None), (2, Some(0), None)]).unwrap();
        assert!(!leq(&a, &b) && !leq(&b, &a));
    }

    #[test]
    fn projection_clauses_hold_without_room() {
        let inst = instance(&TennenbaumParams { n: 4, colours: 2 }).unwrap();
        assert_eq!(unscoped_clauses(&inst, 2).unwrap(), (None, None));
        let e = &inst.dense_sets.iter().find(|d| d.name == "E2").unwrap().item;
        let p = inst.poset();
        // Outside the regime some condition has nothing from E below it.
        assert!((0..p.size()).any(|x| p.down(x).is_disjoint(&e.set)));
    }

    #[test]
    fn restriction_lands_in_the_cut() {
        let c = Condition::new(4, &[(0, None, Some(0)), (1, Some(0), Some(1)), (3, Some(1), Some(2))]).unwrap();
        assert!(!in_e(&c, 2));
        assert_eq!(missing_colours(&c, 2), 2);
        assert_eq!(room_below(&c, 2), 0);
        assert_eq!(show_support(&c.restrict(2)), "0,1");
        assert!(in_e(&c, 4));
    }

    #[test]
    fn default_suite_passes() {
        let failed: Vec<_> = checks(&TennenbaumParams::default())
            .unwrap()
            .into_iter()
            .filter(|r| r.status == crate::report::Status::Fail)
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
