//! Increasing-chain conditions: a finite set of indices, each carrying a
//! sequence of values, all of one common length.
//!
//! `z ≤ w` when `z` extends `w` coordinatewise and every column that is new
//! in `z` is strictly increasing along the indices of `w`. The empty
//! condition has no length and lies above everything.
//!
//! The values stand in for the rationals. With a single value range the
//! restriction to a set `X` of indices cannot lift past the top or bottom
//! value, so the bundled projections use a source poset in which indices in
//! `X` take values on a coarse grid and the remaining indices on a fine grid
//! with room around and between every coarse value.

use super::{param_usize, parse_params, show_bits, subsets, Bundled, BundledMap, NamedPoset, ZooInstance};
use crate::embeddings::ProjectionMap;
use crate::error::{check_size, max_elements, Error, Result};
use crate::order::{FinitePoset, Suborder};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainParams {
    pub indices: usize,
    /// Number of values in the plain poset and of coarse grid points.
    pub values: usize,
    pub max_len: usize,
}

impl Default for ChainParams {
    fn default() -> Self {
        ChainParams {
            indices: 2,
            values: 3,
            max_len: 2,
        }
    }
}

impl ChainParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["indices", "values", "max_len"])?;
        let d = Self::default();
        Ok(ChainParams {
            indices: param_usize(&m, "indices", d.indices)?,
            values: param_usize(&m, "values", d.values)?,
            max_len: param_usize(&m, "max_len", d.max_len)?,
        })
    }
}

/// `rows[α]` is `Some` exactly on the domain; all rows share one length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub rows: Vec<Option<Vec<u8>>>,
}

impl Condition {
    pub fn empty(indices: usize) -> Self {
        Condition { rows: vec![None; indices] }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }

    pub fn len(&self) -> Option<usize> {
        self.rows.iter().flatten().next().map(Vec::len)
    }

    pub fn domain(&self) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .fold(0, |m, (a, _)| m | 1 << a)
    }

    pub fn restrict(&self, mask: u32) -> Condition {
        Condition {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(a, r)| if mask >> a & 1 == 1 { r.clone() } else { None })
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(a, r)| {
                r.as_ref().map(|r| {
                    let vs: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                    format!("{a}:({})", vs.join(","))
                })
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub fn leq(z: &Condition, w: &Condition) -> bool {
    let Some(nw) = w.len() else { return true };
    let nz = z.len().unwrap_or(0);
    if nz < nw {
        return false;
    }
    for (zr, wr) in z.rows.iter().zip(&w.rows) {
        if let Some(wr) = wr {
            match zr {
                Some(zr) if zr[..nw] == wr[..] => {}
                _ => return false,
            }
        }
    }
    let dom: Vec<&Vec<u8>> = w
        .rows
        .iter()
        .zip(&z.rows)
        .filter(|(wr, _)| wr.is_some())
        .map(|(_, zr)| zr.as_ref().expect("extends w"))
        .collect();
    (nw..nz).all(|j| dom.windows(2).all(|p| p[0][j] < p[1][j]))
}

/// Every condition whose index `α` takes values from `allowed[α]`.
pub fn conditions(allowed: &[Vec<u8>], max_len: usize) -> Result<Vec<Condition>> {
    let indices = allowed.len();
    let mut total: u128 = 1;
    for mask in subsets(indices).skip(1) {
        let per_column: u128 = (0..indices)
            .filter(|a| mask >> a & 1 == 1)
            .map(|a| allowed[a].len() as u128)
            .product();
        total += (0..=max_len as u32).map(|n| per_column.saturating_pow(n)).sum::<u128>();
    }
    check_size("increasing-chain conditions", total, max_elements() as u128)?;

    let mut out = vec![Condition::empty(indices)];
    for mask in subsets(indices).skip(1) {
        let dom: Vec<usize> = (0..indices).filter(|a| mask >> a & 1 == 1).collect();
        let mut level = vec![vec![Vec::new(); dom.len()]];
        for n in 0..=max_len {
            if n > 0 {
                let mut next = Vec::new();
                for rows in &level {
                    extend_column(&dom, allowed, rows, 0, &mut rows.clone(), &mut next);
                }
                level = next;
            }
            for rows in &level {
                let mut c = Condition::empty(indices);
                for (i, &a) in dom.iter().enumerate() {
                    c.rows[a] = Some(rows[i].clone());
                }
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn extend_column(dom: &[usize], allowed: &[Vec<u8>], base: &[Vec<u8>], i: usize, cur: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
    if i == dom.len() {
        out.push(cur.clone());
        return;
    }
    for &v in &allowed[dom[i]] {
        cur[i] = base[i].clone();
        cur[i].push(v);
        extend_column(dom, allowed, base, i + 1, cur, out);
    }
}

/// Values `0..values` for every index.
pub fn plain_values(p: &ChainParams) -> Vec<Vec<u8>> {
    vec![(0..p.values as u8).collect(); p.indices]
}

/// Indices in `mask` take the coarse values `(k + 1)(I + 1)` for
/// `k < values`; the others take every value in `0..=(values + 1)(I + 1)`.
pub fn graded_values(p: &ChainParams, mask: u32) -> Result<Vec<Vec<u8>>> {
    let step = p.indices + 1;
    let top = (p.values + 1) * step;
    if top > u8::MAX as usize {
        return Err(Error::Domain(format!("value grid up to {top} does not fit")));
    }
    Ok((0..p.indices)
        .map(|a| {
            if mask >> a & 1 == 1 {
                (0..p.values).map(|k| ((k + 1) * step) as u8).collect()
            } else {
                (0..=top as u8).collect()
            }
        })
        .collect())
}

pub fn poset(conds: &[Condition]) -> Result<FinitePoset> {
    super::materialize("increasing-chain poset", conds, leq)
}

pub fn restriction_suborder(p: &FinitePoset, conds: &[Condition], mask: u32) -> Suborder {
    Suborder::new(p, (0..conds.len()).filter(|&c| conds[c].domain() & !mask == 0)).expect("the empty condition is a member")
}

/// `z ↦ z↾mask` into the restriction suborder viewed as a poset.
pub fn restriction_map(p: &FinitePoset, conds: &[Condition], mask: u32) -> (ProjectionMap, Vec<usize>) {
    let q = restriction_suborder(p, conds, mask);
    let members = q.members().to_vec();
    let index: std::collections::HashMap<&Condition, usize> = members.iter().enumerate().map(|(i, &c)| (&conds[c], i)).collect();
    let pairs: Vec<(usize, usize)> = conds.iter().enumerate().map(|(c, z)| (c, index[&z.restrict(mask)])).collect();
    (ProjectionMap::new(p.size(), pairs, p.induced(&q)).expect("valid map"), members)
}

fn proper_masks(indices: usize) -> impl Iterator<Item = u32> {
    subsets(indices).filter(move |&m| m != 0 && m != (1 << indices) - 1)
}

pub fn instance(params: &ChainParams) -> Result<ZooInstance> {
    if params.indices == 0 || params.values == 0 {
        return Err(Error::Domain("need at least one index and one value".into()));
    }
    let conds = conditions(&plain_values(params), params.max_len)?;
    let p = poset(&conds)?;
    let mut inst = ZooInstance::new(
        "chain",
        format!("indices={} values={} max_len={}", params.indices, params.values, params.max_len),
        NamedPoset {
            name: "chain".into(),
            poset: p.clone(),
            labels: conds.iter().map(Condition::label).collect(),
        },
    );
    for mask in subsets(params.indices) {
        inst.suborders.push(Bundled {
            name: format!("P{{{}}}", show_bits(mask)),
            on: 0,
            item: restriction_suborder(&p, &conds, mask),
        });
    }
    for mask in proper_masks(params.indices) {
        let tag = format!("X{{{}}}", show_bits(mask));
        let conds = conditions(&graded_values(params, mask)?, params.max_len)?;
        let src = poset(&conds)?;
        let labels: Vec<String> = conds.iter().map(Condition::label).collect();
        let (map, members) = restriction_map(&src, &conds, mask);
        let on = inst.posets.len();
        inst.suborders.push(Bundled {
            name: format!("graded{tag}.P"),
            on,
            item: restriction_suborder(&src, &conds, mask),
        });
        inst.maps.push(BundledMap {
            name: format!("graded{tag}.restrict"),
            on,
            map,
            target_labels: members.iter().map(|&c| labels[c].clone()).collect(),
            scope: None,
        });
        inst.posets.push(NamedPoset {
            name: format!("graded{tag}"),
            poset: src,
            labels,
        });
    }
    Ok(inst)
}

pub fn checks(params: &ChainParams) -> Result<Vec<CheckReport>> {
    instance(params)?.standard_checks()
}
