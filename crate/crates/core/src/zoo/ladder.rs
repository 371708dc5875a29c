//! Ladder conditions `⟨f, s⟩`: `f` a partial 0-1 function on `0..n`, `s` a
//! set of ladder points.
//!
//! `⟨g, t⟩ ≤ ⟨f, s⟩` when `f ⊆ g`, `s ⊆ t`, and every point newly defined
//! by `g` that lies on the ladder of some point of `s ∩ S` gets the value 0.
//!
//! For `α ∉ S` the conditions living below `α` form the suborder `R_α`, and
//! [`witness`] builds for every condition a member of `R_α` all of whose
//! `R_α`-extensions stay compatible with it. Conditions are handled as
//! bitmasks so the witness scan runs without materialising the poset.

use super::{param_usize, parse_list, parse_params, Bundled, NamedPoset, ZooInstance};
use crate::error::{check_size, max_elements, Error, Result};
use crate::order::Suborder;
use crate::report::CheckReport;

pub const MAX_ORDINALS: usize = 12;

/// Largest poset the suite materialises to test regularity of `R_α`.
pub const MATERIALIZE_LIMIT: usize = 6_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderParams {
    pub n: usize,
    /// `(α, l_α)` for every ladder point `α`, with `l_α` increasing below `α`.
    pub ladders: Vec<(usize, Vec<usize>)>,
    pub stationary: Vec<usize>,
}

impl Default for LadderParams {
    fn default() -> Self {
        LadderParams {
            n: 6,
            ladders: vec![(4, vec![1, 3])],
            stationary: vec![4],
        }
    }
}

impl LadderParams {
    /// Eight ordinals with two ladder points, both in `S`.
    pub fn wide() -> Self {
        LadderParams {
            n: 8,
            ladders: vec![(4, vec![1, 3]), (7, vec![2, 5, 6])],
            stationary: vec![4, 7],
        }
    }

    /// Keys `n`, `ladders` (as `4:1,3/7:2,5,6`) and `stationary` (as `4,7`).
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["n", "ladders", "stationary"])?;
        let d = Self::default();
        let ladders = match m.get("ladders") {
            None => d.ladders,
            Some(v) => v
                .split('/')
                .filter(|w| !w.is_empty())
                .map(|w| {
                    let (a, l) = w
                        .split_once(':')
                        .ok_or_else(|| Error::Domain(format!("ladder {w:?} should read point:values")))?;
                    let a = a.trim().parse().map_err(|_| Error::Domain(format!("bad ladder point {a:?}")))?;
                    Ok((a, parse_list("ladders", l)?))
                })
                .collect::<Result<_>>()?,
        };
        let stationary = match m.get("stationary") {
            None => d.stationary,
            Some(v) => parse_list("stationary", v)?,
        };
        let p = LadderParams {
            n: param_usize(&m, "n", d.n)?,
            ladders,
            stationary,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("need at least one ordinal".into()));
        }
        check_size("ladder ordinals", self.n as u128, MAX_ORDINALS as u128)?;
        for (a, l) in &self.ladders {
            if *a >= self.n {
                return Err(Error::Domain(format!("ladder point {a} is not below {}", self.n)));
            }
            if l.is_empty() || l.windows(2).any(|w| w[0] >= w[1]) || l.iter().any(|b| b >= a) {
                return Err(Error::Domain(format!("ladder of {a} must be increasing and below it")));
            }
        }
        for s in &self.stationary {
            if !self.ladders.iter().any(|(a, _)| a == s) {
                return Err(Error::Domain(format!("{s} is in S but has no ladder")));
            }
        }
        Ok(())
    }

    fn points(&self) -> u32 {
        self.ladders.iter().fold(0, |m, (a, _)| m | 1 << a)
    }

    fn stationary_mask(&self) -> u32 {
        self.stationary.iter().fold(0, |m, a| m | 1 << a)
    }

    fn ladder_mask(&self, a: usize) -> u32 {
        self.ladders
            .iter()
            .find(|(b, _)| *b == a)
            .map_or(0, |(_, l)| l.iter().fold(0, |m, b| m | 1 << b))
    }
}

/// `f` is the pair `(dom, val)` of masks with `val ⊆ dom`; `s` is a mask of
/// ladder points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    pub dom: u32,
    pub val: u32,
    pub s: u32,
}

impl Condition {
    pub fn label(&self, n: usize) -> String {
        let f: Vec<String> = (0..n)
            .filter(|i| self.dom >> i & 1 == 1)
            .map(|i| format!("{i}:{}", self.val >> i & 1))
            .collect();
        format!("<{{{}}},{{{}}}>", f.join(","), super::show_bits(self.s))
    }
}

/// The order and compatibility, with the zero-forcing masks precomputed.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub params: LadderParams,
    /// `zero[s]`: points a new value must avoid setting to 1 below a
    /// condition with ladder set `s`, indexed by `s ∩ S`.
    ladder_masks: Vec<u32>,
    stationary: u32,
    points: u32,
}

impl Ladder {
    pub fn new(params: LadderParams) -> Result<Self> {
        params.validate()?;
        let ladder_masks = (0..params.n).map(|a| params.ladder_mask(a)).collect();
        Ok(Ladder {
            stationary: params.stationary_mask(),
            points: params.points(),
            ladder_masks,
            params,
        })
    }

    fn zero_mask(&self, s: u32) -> u32 {
        let active = s & self.stationary;
        (0..self.params.n)
            .filter(|a| active >> a & 1 == 1)
            .fold(0, |m, a| m | self.ladder_masks[a])
    }

    pub fn leq(&self, lo: &Condition, hi: &Condition) -> bool {
        hi.dom & !lo.dom == 0
            && (lo.val ^ hi.val) & hi.dom == 0
            && hi.s & !lo.s == 0
            && lo.dom & !hi.dom & self.zero_mask(hi.s) & lo.val == 0
    }

    /// The union is a common extension exactly when the functions agree and
    /// each side's new values respect the other side's ladders.
    pub fn compatible(&self, a: &Condition, b: &Condition) -> bool {
        (a.val ^ b.val) & a.dom & b.dom == 0
            && b.dom & !a.dom & self.zero_mask(a.s) & b.val == 0
            && a.dom & !b.dom & self.zero_mask(b.s) & a.val == 0
    }

    pub fn conditions(&self) -> Result<Vec<Condition>> {
        let n = self.params.n;
        let total = 3u128.pow(n as u32) << self.points.count_ones();
        check_size("ladder conditions", total, max_elements().max(MAX_SCAN) as u128)?;
        let mut out = Vec::new();
        for s in submasks(self.points) {
            for dom in 0..1u32 << n {
                for val in submasks(dom) {
                    out.push(Condition { dom, val, s });
                }
            }
        }
        Ok(out)
    }

    pub fn in_r(&self, c: &Condition, alpha: usize) -> bool {
        let below = (1u32 << alpha) - 1;
        c.dom & !below == 0 && c.s & !below == 0
    }

    /// The recipe: with `x` the points of `s ∩ S` at or above `α` and `y`
    /// the undefined points below `α` on their ladders, return `f↾α`
    /// extended by 0 on `y`, with `s ∩ α`. With `zero_y` false the
    /// extension by 0 is skipped.
    pub fn witness_with(&self, c: &Condition, alpha: usize, zero_y: bool) -> Result<Condition> {
        if self.stationary >> alpha & 1 == 1 {
            return Err(Error::Witness(format!("{alpha} lies in S")));
        }
        if alpha > self.params.n {
            return Err(Error::Witness(format!("{alpha} is above {}", self.params.n)));
        }
        let below = (1u32 << alpha) - 1;
        let x = c.s & self.stationary & !below;
        let ladders = (0..self.params.n)
            .filter(|a| x >> a & 1 == 1)
            .fold(0, |m, a| m | self.ladder_masks[a]);
        let y = ladders & below & !c.dom;
        let dom = (c.dom & below) | if zero_y { y } else { 0 };
        Ok(Condition {
            dom,
            val: c.val & below,
            s: c.s & below,
        })
    }

    pub fn witness(&self, c: &Condition, alpha: usize) -> Result<Condition> {
        self.witness_with(c, alpha, true)
    }

    /// Every `R_α` condition below `w`.
    pub fn extensions_in_r(&self, w: &Condition, alpha: usize) -> Vec<Condition> {
        let below = (1u32 << alpha) - 1;
        let free = below & !w.dom;
        let zero = self.zero_mask(w.s);
        let mut out = Vec::new();
        for s in submasks(self.points & below & !w.s) {
            for extra in submasks(free) {
                for ones in submasks(extra & !zero) {
                    out.push(Condition {
                        dom: w.dom | extra,
                        val: w.val | ones,
                        s: w.s | s,
                    });
                }
            }
        }
        out
    }

    /// The cuts `0..=n` outside `S`.
    pub fn cuts(&self) -> Vec<usize> {
        (0..=self.params.n).filter(|&a| self.stationary >> a & 1 == 0).collect()
    }

    /// First `(condition, α, extension)` where an `R_α`-extension of the
    /// witness is incompatible with the condition.
    pub fn scan(&self, zero_y: bool) -> Result<Option<(Condition, usize, Condition)>> {
        let conds = self.conditions()?;
        for alpha in self.cuts() {
            for c in &conds {
                let w = self.witness_with(c, alpha, zero_y)?;
                debug_assert!(self.in_r(&w, alpha));
                if let Some(u) = self.extensions_in_r(&w, alpha).into_iter().find(|u| !self.compatible(u, c)) {
                    return Ok(Some((*c, alpha, u)));
                }
            }
        }
        Ok(None)
    }
}

/// Upper bound on conditions enumerated by the structural scan.
pub const MAX_SCAN: usize = 200_000;

fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(cur)
    })
}

pub fn instance(params: &LadderParams) -> Result<ZooInstance> {
    let l = Ladder::new(params.clone())?;
    let conds = l.conditions()?;
    let p = super::materialize("ladder poset", &conds, |a, b| l.leq(a, b))?;
    let ladders: Vec<String> = params
        .ladders
        .iter()
        .map(|(a, s)| {
            let v: Vec<String> = s.iter().map(|b| b.to_string()).collect();
            format!("{a}:{}", v.join(","))
        })
        .collect();
    let stationary: Vec<String> = params.stationary.iter().map(|a| a.to_string()).collect();
    let mut inst = ZooInstance::new(
        "ladder",
        format!("n={} ladders={} stationary={}", params.n, ladders.join("/"), stationary.join(",")),
        NamedPoset {
            name: "ladder".into(),
            poset: p.clone(),
            labels: conds.iter().map(|c| c.label(params.n)).collect(),
        },
    );
    for alpha in l.cuts() {
        inst.suborders.push(Bundled {
            name: format!("R{alpha}"),
            on: 0,
            item: Suborder::new(&p, (0..conds.len()).filter(|&i| l.in_r(&conds[i], alpha)))?,
        });
    }
    Ok(inst)
}

fn scan_report(name: &str, l: &Ladder, found: Option<(Condition, usize, Condition)>) -> CheckReport {
    let n = l.params.n;
    CheckReport::from_failure(
        name,
        found.map(|(c, a, u)| format!("condition={};alpha={a};extension={}", c.label(n), u.label(n))),
    )
}

pub fn checks(params: &LadderParams) -> Result<Vec<CheckReport>> {
    let l = Ladder::new(params.clone())?;
    let mut out = vec![scan_report("ladder.witness.scan", &l, l.scan(true)?)];
    let control = l.scan(false)?;
    out.push(CheckReport::from_failure(
        "ladder.control.unzeroed_witness_fails",
        control.is_none().then(|| "no_failure_found".to_string()),
    ));
    let size = (3usize.pow(params.n as u32)) << l.points.count_ones();
    if size <= MATERIALIZE_LIMIT {
        let inst = instance(params)?;
        out.extend(inst.standard_checks()?);
    } else {
        for alpha in l.cuts() {
            out.push(CheckReport::skip(format!("ladder.R{alpha}"), format!("{size}_conditions")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Order;

    fn cond(f: &[(usize, u32)], s: &[usize]) -> Condition {
        Condition {
            dom: f.iter().fold(0, |m, &(i, _)| m | 1 << i),
            val: f.iter().fold(0, |m, &(i, v)| m | v << i),
            s: s.iter().fold(0, |m, &a| m | 1 << a),
        }
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn empty_ladder_set_is_plain_extension() {
        let l = Ladder::new(LadderParams::default()).unwrap();
        let a = cond(&[(1, 1), (5, 0)], &[]);
        let b = cond(&[(5, 0)], &[]);
        assert!(l.leq(&a, &b));
        assert!(!l.leq(&b, &a));
        // With 4 ∈ s, setting ladder point 1 to 1 is no longer an extension.
        assert!(!l.leq(&cond(&[(1, 1), (5, 0)], &[4]), &cond(&[(5, 0)], &[4])));
        assert!(l.leq(&cond(&[(1, 0), (5, 0)], &[4]), &cond(&[(5, 0)], &[4])));
    }

    #[test]
    fn witness_example() {
        let l = Ladder::new(LadderParams::default()).unwrap();
        let p = cond(&[(5, 1)], &[4]);
        assert!(matches!(l.witness(&p, 4), Err(Error::Witness(_))));
        // Below α = 3 the ladder of 4 still reaches point 1, which is zeroed.
        let w = l.witness(&p, 3).unwrap();
        assert_eq!(w, cond(&[(1, 0)], &[]));
        assert!(l.compatible(&w, &p));
        assert!(!l.leq(&w, &p) && !l.leq(&p, &w));
        assert_eq!(l.witness(&p, 5).unwrap(), cond(&[], &[4]));
        let bad = l.witness_with(&cond(&[], &[4]), 3, false).unwrap();
        assert!(l.extensions_in_r(&bad, 3).iter().any(|u| !l.compatible(u, &cond(&[], &[4]))));
    }

    #[test]
    fn structural_order_matches_materialised_poset() {
        let l = Ladder::new(LadderParams::default()).unwrap();
        let conds = l.conditions().unwrap();
        let p = super::super::materialize("ladder", &conds, |a, b| l.leq(a, b)).unwrap();
        assert_eq!(p.size(), 1458);
        for (i, a) in conds.iter().enumerate().step_by(7) {
            for (j, b) in conds.iter().enumerate().step_by(5) {
                assert_eq!(Order::compatible(&p, i, j), l.compatible(a, b), "{a:?} {b:?}");
            }
        }
        let w = l.witness(&conds[100], 2).unwrap();
        let direct: Vec<Condition> = conds.iter().copied().filter(|u| l.in_r(u, 2) && l.leq(u, &w)).collect();
        let mut listed = l.extensions_in_r(&w, 2);
        listed.sort();
        let mut direct = direct;
        direct.sort();
        assert_eq!(listed, direct);
    }

    #[test]
    fn wide_scan() {
        let l = Ladder::new(LadderParams::wide()).unwrap();
        assert_eq!(l.conditions().unwrap().len(), 26_244);
        assert_eq!(l.scan(true).unwrap(), None);
        let (c, alpha, _) = l.scan(false).unwrap().expect("the unzeroed recipe fails");
        assert!(!l.params.stationary.contains(&alpha));
        assert_ne!(c.s & l.stationary, 0);
    }

    #[test]
    fn default_suite_passes() {
        let failed: Vec<_> = checks(&LadderParams::default())
            .unwrap()
            .into_iter()
            .filter(|r| !r.passed())
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
