//! Conditions adding Cohen sequences `g_α`, tags `h(α)` and a map `k` on
//! sequences that is one-to-one on each level, and the map reading off
//! eventually-different conditions from them.
//!
//! A condition `w` carries, per index, an optional sequence and an optional
//! tag, plus an optional finite map `⋆` from sequences to values. `w ≤ v`
//! when `w` extends every sequence of `v`, keeps its tags and extends its
//! map.
//!
//! On the set `D` of conditions whose indices carry both components, whose
//! sequences are distinct of one length `n` with tags below `n`, and whose
//! map is defined exactly on the prefixes of those sequences, `pr(w)(α)`
//! copies `w(α)` below the tag and reads `k(w(α)↾(j+1))` from there on.
//!
//! The bundled map uses `D` itself as its source. Lifting below the top
//! length needs room to extend, so it is quantified over conditions and
//! targets of length below the bound.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;

use super::evdiff::{self, show_seq, Seq};
use super::modred::mutations;
use super::{param_usize, parse_params, BundledMap, MapScope, NamedPoset, ZooInstance};
use crate::embeddings::{check_projection_map, ProjectionMap};
use crate::error::{check_size, max_elements, Error, Result};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SPosetParams {
    pub indices: usize,
    pub values: usize,
    pub max_len: usize,
    /// Tags are below this bound.
    pub tag_bound: usize,
}

impl Default for SPosetParams {
    fn default() -> Self {
        SPosetParams {
            indices: 2,
            values: 2,
            max_len: 2,
            tag_bound: 2,
        }
    }
}

impl SPosetParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["indices", "values", "max_len", "tag_bound"])?;
        let d = Self::default();
        let max_len = param_usize(&m, "max_len", d.max_len)?;
        Ok(SPosetParams {
            indices: param_usize(&m, "indices", d.indices)?,
            values: param_usize(&m, "values", d.values)?,
            max_len,
            tag_bound: param_usize(&m, "tag_bound", max_len)?,
        })
    }

    fn evdiff(&self) -> evdiff::EvDiffParams {
        evdiff::EvDiffParams {
            indices: self.indices,
            values: self.values,
            max_len: self.max_len,
        }
    }
}

/// A condition with no bound on indices, lengths or values; indices past
/// the end of `seq` or `tag` are undefined.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    pub seq: Vec<Option<Seq>>,
    pub tag: Vec<Option<u8>>,
    pub star: Option<BTreeMap<Seq, u8>>,
}

fn get<T: Clone>(v: &[Option<T>], a: usize) -> Option<T> {
    v.get(a).cloned().flatten()
}

impl Condition {
    pub fn index_bound(&self) -> usize {
        self.seq.len().max(self.tag.len())
    }

    /// The indices carrying a sequence or a tag.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.index_bound())
            .filter(|&a| get(&self.seq, a).is_some() || get(&self.tag, a).is_some())
            .collect()
    }

    /// `⋆` is one-to-one on each level.
    pub fn is_condition(&self) -> bool {
        let Some(k) = &self.star else { return true };
        let mut seen = std::collections::HashSet::new();
        k.iter().all(|(s, &v)| seen.insert((s.len(), v)))
    }

    pub fn leq(&self, v: &Condition) -> bool {
        let n = self.index_bound().max(v.index_bound());
        for a in 0..n {
            if let Some(vs) = get(&v.seq, a) {
                match get(&self.seq, a) {
                    Some(ws) if evdiff::is_prefix(&vs, &ws) => {}
                    _ => return false,
                }
            }
            if let Some(vt) = get(&v.tag, a) {
                if get(&self.tag, a) != Some(vt) {
                    return false;
                }
            }
        }
        match (&v.star, &self.star) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(vk), Some(wk)) => vk.iter().all(|(s, x)| wk.get(s) == Some(x)),
        }
    }

    /// The union of `self` and `v`, when it is a condition; it is then
    /// their greatest lower bound.
    pub fn meet(&self, v: &Condition) -> Option<Condition> {
        let n = self.index_bound().max(v.index_bound());
        let mut out = Condition {
            seq: vec![None; n],
            tag: vec![None; n],
            star: None,
        };
        for a in 0..n {
            out.seq[a] = match (get(&self.seq, a), get(&v.seq, a)) {
                (Some(x), Some(y)) if evdiff::is_prefix(&x, &y) => Some(y),
                (Some(x), Some(y)) if evdiff::is_prefix(&y, &x) => Some(x),
                (Some(_), Some(_)) => return None,
                (x, y) => x.or(y),
            };
            out.tag[a] = match (get(&self.tag, a), get(&v.tag, a)) {
                (Some(x), Some(y)) if x != y => return None,
                (x, y) => x.or(y),
            };
        }
        out.star = match (&self.star, &v.star) {
            (None, None) => None,
            (Some(k), None) | (None, Some(k)) => Some(k.clone()),
            (Some(k), Some(l)) => {
                let mut u = k.clone();
                for (s, &x) in l {
                    if *u.entry(s.clone()).or_insert(x) != x {
                        return None;
                    }
                }
                Some(u)
            }
        };
        out.is_condition().then_some(out)
    }

    /// The common length `n` when `self` lies in `D`.
    pub fn d_length(&self) -> Option<Option<usize>> {
        let idx = self.indices();
        let mut seqs = Vec::new();
        for &a in &idx {
            seqs.push(get(&self.seq, a)?);
            get(&self.tag, a)?;
        }
        let n = seqs.first().map(Vec::len);
        if seqs.iter().any(|s| Some(s.len()) != n) {
            return None;
        }
        let mut sorted = seqs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != seqs.len() {
            return None;
        }
        if let Some(n) = n {
            if idx.iter().any(|&a| get(&self.tag, a).is_some_and(|t| t as usize >= n)) {
                return None;
            }
        }
        let k = self.star.as_ref()?;
        let prefixes: std::collections::BTreeSet<Seq> = seqs.iter().flat_map(|s| (0..=s.len()).map(|i| s[..i].to_vec())).collect();
        (k.keys().cloned().collect::<std::collections::BTreeSet<_>>() == prefixes).then_some(n)
    }

    pub fn in_d(&self) -> bool {
        self.is_condition() && self.d_length().is_some()
    }

    /// `pr(w)` for `w ∈ D`, over `indices` indices.
    pub fn project(&self, indices: usize) -> Option<evdiff::Condition> {
        self.d_length()?;
        let k = self.star.as_ref()?;
        let mut z = vec![None; indices.max(self.index_bound())];
        for a in self.indices() {
            let s = get(&self.seq, a)?;
            let h = get(&self.tag, a)? as usize;
            let row: Seq = (0..s.len()).map(|j| if j < h { s[j] } else { k[&s[..=j]] }).collect();
            z[a] = Some(row);
        }
        Some(z)
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = (0..self.index_bound())
            .filter_map(|a| {
                let s = get(&self.seq, a).map(|s| show_seq(&s));
                let t = get(&self.tag, a).map(|t| t.to_string());
                (s.is_some() || t.is_some()).then(|| format!("{a}:{}/{}", s.unwrap_or_else(|| "-".into()), t.unwrap_or_else(|| "-".into())))
            })
            .collect();
        if let Some(k) = &self.star {
            let ks: Vec<String> = k.iter().map(|(s, v)| format!("{}>{v}", show_seq(s))).collect();
            parts.push(format!("*:[{}]", ks.join(",")));
        }
        format!("{{{}}}", parts.join(","))
    }
}

/// Partial maps on the given sequences that are one-to-one on each level,
/// values below `values`.
fn star_maps(seqs: &[Seq], values: usize) -> Vec<BTreeMap<Seq, u8>> {
    let mut out: Vec<BTreeMap<Seq, u8>> = vec![BTreeMap::new()];
    for s in seqs {
        let mut next = Vec::new();
        for k in &out {
            next.push(k.clone());
            for v in 0..values as u8 {
                if !k.iter().any(|(t, &x)| t.len() == s.len() && x == v) {
                    let mut k2 = k.clone();
                    k2.insert(s.clone(), v);
                    next.push(k2);
                }
            }
        }
        out = next;
    }
    out
}

/// Every condition of `D` within the bounds.
pub fn d_conditions(p: &SPosetParams) -> Result<Vec<Condition>> {
    let mut out = vec![Condition {
        star: Some(BTreeMap::new()),
        ..Condition::default()
    }];
    for n in 1..=p.max_len {
        let level: Vec<Seq> = evdiff::sequences(p.values, n).into_iter().filter(|s| s.len() == n).collect();
        for dom in 1..1u32 << p.indices {
            let idx: Vec<usize> = (0..p.indices).filter(|a| dom >> a & 1 == 1).collect();
            let mut picks = Vec::new();
            distinct_picks(&level, idx.len(), &mut Vec::new(), &mut picks);
            for pick in &picks {
                let mut prefixes: Vec<Seq> = pick.iter().flat_map(|s| (0..=n).map(|i| s[..i].to_vec())).collect();
                prefixes.sort();
                prefixes.dedup();
                let full: Vec<BTreeMap<Seq, u8>> = star_maps(&prefixes, p.values)
                    .into_iter()
                    .filter(|k| k.len() == prefixes.len())
                    .collect();
                let tag_max = n.min(p.tag_bound);
                for tags in 0..tag_max.pow(idx.len() as u32) {
                    for k in &full {
                        let mut w = Condition {
                            seq: vec![None; p.indices],
                            tag: vec![None; p.indices],
                            star: Some(k.clone()),
                        };
                        let mut t = tags;
                        for (i, &a) in idx.iter().enumerate() {
                            w.seq[a] = Some(pick[i].clone());
                            w.tag[a] = Some((t % tag_max) as u8);
                            t /= tag_max;
                        }
                        out.push(w);
                    }
                }
                check_size("S-poset dense set", out.len() as u128, max_elements() as u128)?;
            }
        }
    }
    Ok(out)
}

fn distinct_picks(level: &[Seq], k: usize, cur: &mut Vec<Seq>, out: &mut Vec<Vec<Seq>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for s in level {
        if !cur.contains(s) {
            cur.push(s.clone());
            distinct_picks(level, k, cur, out);
            cur.pop();
        }
    }
}

/// Visits every condition of the bounded poset without storing them.
pub fn for_each_condition(p: &SPosetParams, mut f: impl FnMut(&Condition) -> bool) -> bool {
    let seqs = evdiff::sequences(p.values, p.max_len);
    let stars: Vec<Option<BTreeMap<Seq, u8>>> = std::iter::once(None)
        .chain(star_maps(&seqs, p.values).into_iter().map(Some))
        .collect();
    let per_index: Vec<(Option<Seq>, Option<u8>)> = std::iter::once(None)
        .chain(seqs.iter().cloned().map(Some))
        .flat_map(|s| {
            std::iter::once(None)
                .chain((0..p.tag_bound as u8).map(Some))
                .map(move |t| (s.clone(), t))
        })
        .collect();
    let combos = per_index.len().pow(p.indices as u32);
    for star in &stars {
        for mut c in 0..combos {
            let mut w = Condition {
                seq: vec![None; p.indices],
                tag: vec![None; p.indices],
                star: star.clone(),
            };
            for a in 0..p.indices {
                let (s, t) = &per_index[c % per_index.len()];
                c /= per_index.len();
                w.seq[a] = s.clone();
                w.tag[a] = *t;
            }
            if !f(&w) {
                return false;
            }
        }
    }
    true
}

/// A member of `D` below `w`, built with as many extra indices, values and
/// one more length as it takes.
///
/// Every key of `⋆` that is not a prefix of a sequence of `w` gets a fresh
/// index carrying it; all sequences are padded to a common length and then
/// told apart by one more distinct entry; the map is completed with fresh
/// values on each level.
pub fn extend_into_d(w: &Condition) -> Condition {
    let mut seq: Vec<Option<Seq>> = (0..w.index_bound()).map(|a| get(&w.seq, a)).collect();
    let mut tag: Vec<Option<u8>> = (0..w.index_bound()).map(|a| get(&w.tag, a)).collect();
    for a in w.indices() {
        seq[a].get_or_insert_with(Vec::new);
        tag[a].get_or_insert(0);
    }
    let mut k = w.star.clone().unwrap_or_default();
    for key in k.keys() {
        if !seq.iter().flatten().any(|s| evdiff::is_prefix(key, s)) {
            seq.push(Some(key.clone()));
            tag.push(Some(0));
        }
    }
    let n0 = seq
        .iter()
        .flatten()
        .map(Vec::len)
        .chain(tag.iter().flatten().map(|&t| t as usize + 1))
        .chain(k.keys().map(Vec::len))
        .max()
        .unwrap_or(0)
        .max(1);
    for (fresh, s) in seq.iter_mut().flatten().enumerate() {
        s.resize(n0, 0);
        s.push(fresh as u8);
    }
    for s in seq.iter().flatten() {
        for i in 0..=s.len() {
            let p = &s[..i];
            if !k.contains_key(p) {
                let v = k.iter().filter(|(t, _)| t.len() == i).map(|(_, &v)| v + 1).max().unwrap_or(0);
                k.insert(p.to_vec(), v);
            }
        }
    }
    Condition { seq, tag, star: Some(k) }
}

/// First bounded condition whose constructed extension is not a member of
/// `D` below it.
pub fn residue_density(p: &SPosetParams) -> Option<Condition> {
    let mut bad = None;
    for_each_condition(p, |w| {
        let e = extend_into_d(w);
        if e.in_d() && e.leq(w) {
            true
        } else {
            bad = Some(w.clone());
            false
        }
    });
    bad
}

pub struct Projection {
    pub source: Vec<Condition>,
    pub target: Vec<evdiff::Condition>,
    pub map: ProjectionMap,
    pub scope: MapScope,
}

pub fn projection(p: &SPosetParams) -> Result<Projection> {
    if p.indices == 0 || p.values == 0 || p.max_len == 0 {
        return Err(Error::Domain("need at least one index, value and position".into()));
    }
    let source = d_conditions(p)?;
    let src = super::materialize("S-poset dense set", &source, Condition::leq)?;
    let (tgt, target) = evdiff::poset(&p.evdiff(), true)?;
    let index: HashMap<&evdiff::Condition, usize> = target.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let pairs: Vec<(usize, usize)> = source
        .iter()
        .enumerate()
        .map(|(i, w)| (i, index[&w.project(p.indices).expect("member of D")]))
        .collect();
    let map = ProjectionMap::new(src.size(), pairs, tgt)?;
    let short = |n: Option<usize>| n.is_none_or(|n| n < p.max_len);
    let mut lift_sources = FixedBitSet::with_capacity(source.len());
    lift_sources.extend((0..source.len()).filter(|&i| short(source[i].d_length().flatten())));
    let mut lift_targets = FixedBitSet::with_capacity(target.len());
    lift_targets.extend((0..target.len()).filter(|&i| target[i].iter().flatten().all(|s| s.len() < p.max_len)));
    Ok(Projection {
        source,
        target,
        map,
        scope: MapScope {
            name: "room_to_extend".into(),
            density: None,
            lift_sources: Some(lift_sources),
            lift_targets: Some(lift_targets),
        },
    })
}

pub fn instance(params: &SPosetParams) -> Result<ZooInstance> {
    let pr = projection(params)?;
    let src = super::materialize("S-poset dense set", &pr.source, Condition::leq)?;
    let mut inst = ZooInstance::new(
        "spos",
        format!(
            "indices={} values={} max_len={} tag_bound={}",
            params.indices, params.values, params.max_len, params.tag_bound
        ),
        NamedPoset {
            name: "D".into(),
            poset: src,
            labels: pr.source.iter().map(Condition::label).collect(),
        },
    );
    inst.maps.push(BundledMap {
        name: "pr".into(),
        on: 0,
        map: pr.map,
        target_labels: pr.target.iter().map(evdiff::label).collect(),
        scope: Some(pr.scope),
    });
    Ok(inst)
}

pub fn checks(params: &SPosetParams) -> Result<Vec<CheckReport>> {
    let inst = instance(params)?;
    let mut out = inst.standard_checks()?;
    let m = &inst.maps[0];
    let scope = m.scope.as_ref().expect("scoped").to_scope();
    let mut survivors = Vec::new();
    for (i, mutated) in mutations(&m.map, 10, 0).iter().enumerate() {
        if check_projection_map(inst.poset(), mutated, &scope)?.passed() {
            survivors.push(i);
        }
    }
    out.push(CheckReport::from_failure(
        "spos.pr.mutations_detected",
        (!survivors.is_empty()).then(|| format!("surviving={survivors:?}")),
    ));
    out.push(CheckReport::from_failure(
        "spos.D.dense_with_room",
        residue_density(params).map(|w| format!("no_extension={}", w.label())),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Order;

    fn one_index(seq: &[u8], tag: u8, star: &[(&[u8], u8)]) -> Condition {
        Condition {
            seq: vec![Some(seq.to_vec())],
            tag: vec![Some(tag)],
            star: Some(star.iter().map(|(s, v)| (s.to_vec(), *v)).collect()),
        }
    }

    #[test]
    fn empty_condition_is_not_in_d() {
        let e = Condition::default();
        assert!(e.is_condition() && !e.in_d());
        let top = Condition {
            star: Some(BTreeMap::new()),
            ..Condition::default()
        };
        assert!(top.in_d() && top.leq(&e));
    }

    #[test]
    fn projection_reads_the_map_past_the_tag() {
        let w = one_index(&[0], 0, &[(&[], 1), (&[0], 1)]);
        assert!(w.in_d());
        assert_eq!(w.project(1).unwrap(), vec![Some(vec![1])]);
        let w = one_index(&[0, 1], 1, &[(&[], 0), (&[0], 0), (&[0, 1], 1)]);
        assert_eq!(w.project(1).unwrap(), vec![Some(vec![0, 1])]);
        // Repeating a value on one level is not a condition.
        let bad = one_index(&[0], 0, &[(&[], 0), (&[0], 0), (&[1], 0)]);
        assert!(!bad.is_condition());
    }

    #[test]
    fn sizes() {
        let p = SPosetParams::default();
        assert_eq!(d_conditions(&p).unwrap().len(), 537);
        let mut count = 0usize;
        for_each_condition(&p, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 576 * 442);
    }

    #[test]
    fn d_is_not_dense_without_room_for_new_indices() {
        // Two keys on one level need two indices carrying them.
        let p = SPosetParams {
            indices: 1,
            values: 2,
            max_len: 1,
            tag_bound: 1,
        };
        let w = Condition {
            star: Some([(vec![0], 0), (vec![1], 1)].into_iter().collect()),
            ..Condition::default()
        };
        let d = d_conditions(&p).unwrap();
        assert!(d.iter().all(|x| !x.leq(&w)));
        let e = extend_into_d(&w);
        assert!(e.in_d() && e.leq(&w) && e.indices().len() == 2);
        assert_eq!(residue_density(&p), None);
    }

    #[test]
    fn compatibility_in_d_matches_unions() {
        let p = SPosetParams::default();
        let pr = projection(&p).unwrap();
        let src = super::super::materialize("d", &pr.source, Condition::leq).unwrap();
        let mut disagreements = 0;
        for a in 0..pr.source.len() {
            for b in (a..pr.source.len()).step_by(3) {
                let union = pr.source[a].meet(&pr.source[b]).is_some();
                if Order::compatible(&src, a, b) && !union {
                    disagreements += 1;
                }
            }
        }
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn default_suite_passes() {
        let failed: Vec<_> = checks(&SPosetParams::default())
            .unwrap()
            .into_iter()
            .filter(|r| !r.passed())
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
