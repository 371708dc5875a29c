//! Eventually-different conditions: finite partial maps from `I` indices to
//! sequences in `m^{≤L}`.
//!
//! `z ≤ w` when `z` extends `w` coordinatewise and, for distinct `α, β` in
//! the domain of `w`, every position `n` new in `z(α)` that also lies in
//! the domain of `z(β)` carries different values: `z(α)(n) ≠ z(β)(n)`.

use super::{param_usize, parse_params, show_bits, subsets, Bundled, NamedPoset, ZooInstance};
use crate::embeddings::is_regular_suborder_antichain;
use crate::error::{check_size, max_elements, Result};
use crate::order::{FinitePoset, Suborder};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvDiffParams {
    pub indices: usize,
    pub values: usize,
    pub max_len: usize,
}

impl Default for EvDiffParams {
    fn default() -> Self {
        EvDiffParams {
            indices: 2,
            values: 2,
            max_len: 2,
        }
    }
}

impl EvDiffParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["indices", "values", "max_len"])?;
        let d = Self::default();
        Ok(EvDiffParams {
            indices: param_usize(&m, "indices", d.indices)?,
            values: param_usize(&m, "values", d.values)?,
            max_len: param_usize(&m, "max_len", d.max_len)?,
        })
    }
}

pub type Seq = Vec<u8>;

/// One entry per index; `None` is outside the domain.
pub type Condition = Vec<Option<Seq>>;

/// Every sequence over `values` values of length at most `max_len`, shortest
/// first and lexicographic within a length.
pub fn sequences(values: usize, max_len: usize) -> Vec<Seq> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &level {
            for v in 0..values as u8 {
                let mut t: Seq = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn show_seq(s: &[u8]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn label(z: &Condition) -> String {
    let parts: Vec<String> = z
        .iter()
        .enumerate()
        .filter_map(|(a, s)| s.as_ref().map(|s| format!("{a}:{}", show_seq(s))))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// All conditions, ordered by the base-`|seqs|+1` number whose digit `α` is
/// 0 for an undefined index and `k + 1` for the `k`-th sequence.
pub fn conditions(p: &EvDiffParams) -> Result<Vec<Condition>> {
    let seqs = sequences(p.values, p.max_len);
    let base = seqs.len() as u128 + 1;
    let n = base.checked_pow(p.indices as u32).unwrap_or(u128::MAX);
    check_size("eventually-different conditions", n, max_elements() as u128)?;
    Ok((0..n as usize)
        .map(|mut c| {
            (0..p.indices)
                .map(|_| {
                    let d = c % (seqs.len() + 1);
                    c /= seqs.len() + 1;
                    (d > 0).then(|| seqs[d - 1].clone())
                })
                .collect()
        })
        .collect())
}

pub fn is_prefix(short: &[u8], long: &[u8]) -> bool {
    short.len() <= long.len() && long[..short.len()] == *short
}

/// The order; with `difference` false only coordinatewise extension is
/// required.
pub fn leq_with(z: &Condition, w: &Condition, difference: bool) -> bool {
    for (zi, wi) in z.iter().zip(w) {
        if let Some(ws) = wi {
            match zi {
                Some(zs) if is_prefix(ws, zs) => {}
                _ => return false,
            }
        }
    }
    if !difference {
        return true;
    }
    for (a, wa) in w.iter().enumerate() {
        let Some(wa) = wa else { continue };
        let za = z[a].as_ref().expect("extends w");
        for (b, wb) in w.iter().enumerate() {
            if a == b || wb.is_none() {
                continue;
            }
            let zb = z[b].as_ref().expect("extends w");
            if (wa.len()..za.len()).any(|n| n < zb.len() && za[n] == zb[n]) {
                return false;
            }
        }
    }
    true
}

pub fn leq(z: &Condition, w: &Condition) -> bool {
    leq_with(z, w, true)
}

fn domain_mask(z: &Condition) -> u32 {
    z.iter().enumerate().filter(|(_, s)| s.is_some()).fold(0, |m, (a, _)| m | 1 << a)
}

/// Conditions whose domain lies inside `mask`.
pub fn restriction_suborder(p: &FinitePoset, conds: &[Condition], mask: u32) -> Suborder {
    Suborder::new(p, (0..conds.len()).filter(|&c| domain_mask(&conds[c]) & !mask == 0)).expect("the empty condition is a member")
}

pub fn poset(params: &EvDiffParams, difference: bool) -> Result<(FinitePoset, Vec<Condition>)> {
    let conds = conditions(params)?;
    let p = super::materialize("eventually-different poset", &conds, |a, b| leq_with(a, b, difference))?;
    Ok((p, conds))
}

pub fn instance(params: &EvDiffParams) -> Result<ZooInstance> {
    let (p, conds) = poset(params, true)?;
    let mut inst = ZooInstance::new(
        "evdiff",
        format!("indices={} values={} max_len={}", params.indices, params.values, params.max_len),
        NamedPoset {
            name: "evdiff".into(),
            poset: p.clone(),
            labels: conds.iter().map(label).collect(),
        },
    );
    for mask in subsets(params.indices) {
        inst.suborders.push(Bundled {
            name: format!("P{{{}}}", show_bits(mask)),
            on: 0,
            item: restriction_suborder(&p, &conds, mask),
        });
    }
    Ok(inst)
}

/// The restriction suborders whose regularity verdict changes when the
/// difference clause is dropped, as `(mask, with clause, without clause)`.
pub fn clause_sensitivity(params: &EvDiffParams) -> Result<Vec<(u32, bool, bool)>> {
    let (with, conds) = poset(params, true)?;
    let (without, _) = poset(params, false)?;
    let mut out = Vec::new();
    for mask in subsets(params.indices) {
        let a = is_regular_suborder_antichain(&with, &restriction_suborder(&with, &conds, mask))?.regular;
        let b = is_regular_suborder_antichain(&without, &restriction_suborder(&without, &conds, mask))?.regular;
        out.push((mask, a, b));
    }
    Ok(out)
}

/// First pair `(z, w)` on which dropping the difference clause changes the
/// verdict of `z ≤ w`.
pub fn clause_witness(params: &EvDiffParams) -> Result<Option<(usize, usize)>> {
    let conds = conditions(params)?;
    for (a, z) in conds.iter().enumerate() {
        for (b, w) in conds.iter().enumerate() {
            if leq_with(z, w, true) != leq_with(z, w, false) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn checks(params: &EvDiffParams) -> Result<Vec<CheckReport>> {
    let inst = instance(params)?;
    let mut out = inst.standard_checks()?;
    let control = clause_witness(params)?;
    out.push(CheckReport::from_failure(
        "evdiff.control.clause_changes_order",
        control.is_none().then(|| "orders_agree".to_string()),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(entries: &[Option<&[u8]>]) -> Condition {
        entries.iter().map(|e| e.map(|s| s.to_vec())).collect()
    }

    #[test]
    fn one_index_is_plain_extension() {
        let p = EvDiffParams {
            indices: 1,
            values: 2,
            max_len: 2,
        };
        let conds = conditions(&p).unwrap();
        assert_eq!(conds.len(), 8);
        for a in &conds {
            for b in &conds {
                assert_eq!(leq(a, b), leq_with(a, b, false));
            }
        }
    }

    #[test]
    fn legality_table() {
        // Position 0 is new on both indices and carries equal values.
        let w = c(&[Some(&[]), Some(&[])]);
        assert!(!leq(&c(&[Some(&[0]), Some(&[0])]), &w));
        assert!(leq(&c(&[Some(&[0]), Some(&[1])]), &w));
        // Only index 0 is in the domain of w: no pair to compare.
        let w = c(&[Some(&[0]), None]);
        assert!(leq(&c(&[Some(&[0]), Some(&[0])]), &w));
        // Position 0 is old on index 0 and new on index 1.
        let w = c(&[Some(&[0]), Some(&[])]);
        assert!(!leq(&c(&[Some(&[0]), Some(&[0])]), &w));
    }

    #[test]
    fn sizes() {
        assert_eq!(sequences(2, 2).len(), 7);
        assert_eq!(conditions(&EvDiffParams::default()).unwrap().len(), 64);
    }

    #[test]
    fn dropping_the_clause_leaves_a_product() {
        // Without the clause the order is a product of sequence trees, so
        // every restriction stays regular; with it, three indices over two
        // values run out of distinct values.
        let d = clause_sensitivity(&EvDiffParams::default()).unwrap();
        assert!(d.iter().all(|&(_, with, without)| with && without));
        let tight = EvDiffParams {
            indices: 3,
            values: 2,
            max_len: 1,
        };
        let d = clause_sensitivity(&tight).unwrap();
        assert!(d.iter().all(|&(_, _, without)| without));
        assert!(d.contains(&(0b001, false, true)));
        assert!(clause_witness(&EvDiffParams::default()).unwrap().is_some());
    }

    #[test]
    fn default_suite_passes() {
        let failed: Vec<_> = checks(&EvDiffParams::default())
            .unwrap()
            .into_iter()
            .filter(|r| !r.passed())
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
