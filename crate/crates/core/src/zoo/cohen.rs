//! Finite partial 0-1 functions on `k` coordinates, ordered by reverse
//! extension.
//!
//! A condition is stored as a base-3 number: digit `i` is 0 when
//! coordinate `i` is undefined, and `v + 1` when it takes value `v`.

use super::{param_usize, parse_params, show_bits, subsets, Bundled, BundledMap, NamedPoset, ZooInstance};
use crate::boolean::{completion, is_independent_set};
use crate::embeddings::ProjectionMap;
use crate::error::{check_size, Result};
use crate::order::{is_dense_subset, FinitePoset, Suborder};
use crate::report::CheckReport;

pub const MAX_COORDS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohenParams {
    pub k: usize,
}

impl Default for CohenParams {
    fn default() -> Self {
        CohenParams { k: 2 }
    }
}

impl CohenParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["k"])?;
        Ok(CohenParams {
            k: param_usize(&m, "k", Self::default().k)?,
        })
    }
}

pub fn encode(values: &[Option<bool>]) -> usize {
    values.iter().rev().fold(0, |acc, v| acc * 3 + v.map_or(0, |b| b as usize + 1))
}

pub fn decode(k: usize, mut c: usize) -> Vec<Option<bool>> {
    (0..k)
        .map(|_| {
            let d = c % 3;
            c /= 3;
            (d > 0).then_some(d == 2)
        })
        .collect()
}

pub fn label(values: &[Option<bool>]) -> String {
    let parts: Vec<String> = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|b| format!("{i}:{}", b as u8)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn digit(c: usize, i: usize) -> usize {
    c / 3usize.pow(i as u32) % 3
}

fn domain(k: usize, c: usize) -> u32 {
    (0..k).filter(|&i| digit(c, i) != 0).fold(0, |m, i| m | 1 << i)
}

/// `a ≤ b`: `a` agrees with `b` wherever `b` is defined.
pub fn leq(k: usize, a: usize, b: usize) -> bool {
    (0..k).all(|i| {
        let db = digit(b, i);
        db == 0 || digit(a, i) == db
    })
}

/// The union of two agreeing conditions, which is their greatest lower
/// bound; `None` when they disagree somewhere.
pub fn meet(k: usize, a: usize, b: usize) -> Option<usize> {
    let mut out = 0;
    for i in (0..k).rev() {
        let d = match (digit(a, i), digit(b, i)) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            _ => return None,
        };
        out = out * 3 + d;
    }
    Some(out)
}

/// Restriction of condition `c` to the coordinates in `mask`.
pub fn restrict(k: usize, c: usize, mask: u32) -> usize {
    (0..k)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| digit(c, i) * 3usize.pow(i as u32))
        .sum()
}

pub fn cohen_poset(k: usize) -> Result<FinitePoset> {
    check_size("Cohen coordinates", k as u128, MAX_COORDS as u128)?;
    FinitePoset::from_fn(3usize.pow(k as u32), |a, b| leq(k, a, b))
}

/// Conditions whose domain lies inside `mask`.
pub fn restriction_suborder(p: &FinitePoset, k: usize, mask: u32) -> Suborder {
    Suborder::new(p, (0..p.size()).filter(|&c| domain(k, c) & !mask == 0)).expect("the empty condition is a member")
}

/// `c ↦ c↾mask`, into the restriction suborder viewed as a poset.
pub fn restriction_map(p: &FinitePoset, k: usize, mask: u32) -> (ProjectionMap, Vec<usize>) {
    let q = restriction_suborder(p, k, mask);
    let target = p.induced(&q);
    let members = q.members().to_vec();
    let pairs = (0..p.size()).map(|c| {
        let r = restrict(k, c, mask);
        (c, members.binary_search(&r).expect("restrictions lie in the suborder"))
    });
    (ProjectionMap::new(p.size(), pairs, target).expect("valid map"), members)
}

pub fn instance(params: &CohenParams) -> Result<ZooInstance> {
    let k = params.k;
    let poset = cohen_poset(k)?;
    let labels: Vec<String> = (0..poset.size()).map(|c| label(&decode(k, c))).collect();
    let mut inst = ZooInstance::new(
        "cohen",
        format!("k={k}"),
        NamedPoset {
            name: "cohen".into(),
            poset: poset.clone(),
            labels: labels.clone(),
        },
    );
    for mask in subsets(k) {
        let tag = format!("S{{{}}}", show_bits(mask));
        inst.suborders.push(Bundled {
            name: format!("restrict{tag}"),
            on: 0,
            item: restriction_suborder(&poset, k, mask),
        });
        let (map, members) = restriction_map(&poset, k, mask);
        inst.maps.push(BundledMap {
            name: format!("project{tag}"),
            on: 0,
            map,
            target_labels: members.iter().map(|&c| labels[c].clone()).collect(),
            scope: None,
        });
    }
    Ok(inst)
}

/// For every pair of coordinate sets, the nonzero meets of their
/// restrictions are dense in the restriction to the union.
pub fn join_density(p: &FinitePoset, k: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for s1 in subsets(k) {
        for s2 in subsets(k).filter(|&s2| s2 >= s1) {
            let union = restriction_suborder(p, k, s1 | s2);
            let r1 = restriction_suborder(p, k, s1);
            let r2 = restriction_suborder(p, k, s2);
            let sub = p.induced(&union);
            let mut meets = sub.empty_set();
            for &a in r1.members() {
                for &b in r2.members() {
                    if let Some(m) = meet(k, a, b) {
                        if let Ok(i) = union.members().binary_search(&m) {
                            meets.insert(i);
                        }
                    }
                }
            }
            let dense = is_dense_subset(&sub, &meets).unwrap_or(false);
            let witness = (!dense).then(|| {
                let miss = sub.minimal().difference(&meets).next().unwrap_or(0);
                format!("missing={}", union.members()[miss])
            });
            out.push(CheckReport::from_failure(
                format!("cohen.join_density.S{{{}}}+S{{{}}}", show_bits(s1), show_bits(s2)),
                witness,
            ));
        }
    }
    out
}

pub fn checks(params: &CohenParams) -> Result<Vec<CheckReport>> {
    let k = params.k;
    let inst = instance(params)?;
    let p = inst.poset();
    let mut out = inst.standard_checks()?;

    let ro = completion(p);
    let atoms_ok = ro.atom_count() == 1 << k;
    out.push(CheckReport::from_failure(
        "cohen.completion.atoms",
        (!atoms_ok).then(|| format!("atoms={}", ro.atom_count())),
    ));
    let gens: Vec<_> = (0..k)
        .map(|i| {
            let mut v = vec![None; k];
            v[i] = Some(true);
            ro.embed(encode(&v)).clone()
        })
        .collect();
    let free = is_independent_set(&ro.algebra(), &gens)?;
    out.push(CheckReport::from_failure(
        "cohen.completion.free_generators",
        (!free).then(|| "dependent".to_string()),
    ));
    out.extend(join_density(p, k));
    Ok(out)
}
