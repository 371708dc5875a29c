//! Partial functions from `coords × positions` cells into `2^N` values,
//! ordered by reverse extension, and their pointwise reduction modulo
//! `2^n`.
//!
//! A condition is a base-`2^N + 1` number with one digit per cell: 0 for
//! undefined, `v + 1` for value `v`.

use rand::Rng;

use super::{param_usize, parse_params, BundledMap, NamedPoset, ZooInstance};
use crate::embeddings::{check_projection_map, ProjectionMap, ProjectionScope};
use crate::error::{check_size, max_elements, Error, Result};
use crate::order::FinitePoset;
use crate::random::rng;
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModParams {
    /// Values are below `2^exp`.
    pub exp: usize,
    /// The target keeps values modulo `2^sub_exp`.
    pub sub_exp: usize,
    pub coords: usize,
    pub positions: usize,
}

impl Default for ModParams {
    fn default() -> Self {
        ModParams {
            exp: 2,
            sub_exp: 1,
            coords: 1,
            positions: 2,
        }
    }
}

impl ModParams {
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let m = parse_params(pairs, &["exp", "sub_exp", "coords", "positions"])?;
        let d = Self::default();
        Ok(ModParams {
            exp: param_usize(&m, "exp", d.exp)?,
            sub_exp: param_usize(&m, "sub_exp", d.sub_exp)?,
            coords: param_usize(&m, "coords", d.coords)?,
            positions: param_usize(&m, "positions", d.positions)?,
        })
    }

    fn cells(&self) -> usize {
        self.coords * self.positions
    }
}

/// Partial functions from `cells` cells into `values` values.
#[derive(Clone, Copy, Debug)]
struct Cells {
    cells: usize,
    values: usize,
}

impl Cells {
    fn size(self) -> Result<usize> {
        let n = ((self.values + 1) as u128).checked_pow(self.cells as u32).unwrap_or(u128::MAX);
        check_size("partial function poset", n, max_elements() as u128)?;
        Ok(n as usize)
    }

    fn digits(self, mut c: usize) -> Vec<usize> {
        (0..self.cells)
            .map(|_| {
                let d = c % (self.values + 1);
                c /= self.values + 1;
                d
            })
            .collect()
    }

    fn encode(self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * (self.values + 1) + d)
    }

    fn poset(self) -> Result<FinitePoset> {
        let n = self.size()?;
        let digits: Vec<Vec<usize>> = (0..n).map(|c| self.digits(c)).collect();
        FinitePoset::from_fn(n, |a, b| digits[a].iter().zip(&digits[b]).all(|(&x, &y)| y == 0 || x == y))
    }

    fn label(self, c: usize, positions: usize) -> String {
        let parts: Vec<String> = self
            .digits(c)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(cell, &d)| format!("{}.{}:{}", cell / positions, cell % positions, d - 1))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn validate(p: &ModParams) -> Result<()> {
    if p.sub_exp > p.exp {
        return Err(Error::Domain(format!("sub_exp {} exceeds exp {}", p.sub_exp, p.exp)));
    }
    if p.exp >= 16 || p.cells() == 0 {
        return Err(Error::Domain("need 1 ≤ cells and exp < 16".into()));
    }
    Ok(())
}

/// Source poset, target poset and the pointwise reduction between them.
pub fn mod_reduction(p: &ModParams) -> Result<(FinitePoset, ProjectionMap)> {
    validate(p)?;
    let src = Cells {
        cells: p.cells(),
        values: 1 << p.exp,
    };
    let tgt = Cells {
        cells: p.cells(),
        values: 1 << p.sub_exp,
    };
    let source = src.poset()?;
    let target = tgt.poset()?;
    let modulus = 1 << p.sub_exp;
    let pairs = (0..source.size()).map(|c| {
        let reduced: Vec<usize> = src
            .digits(c)
            .iter()
            .map(|&d| if d == 0 { 0 } else { (d - 1) % modulus + 1 })
            .collect();
        (c, tgt.encode(&reduced))
    });
    let map = ProjectionMap::new(source.size(), pairs, target)?;
    Ok((source, map))
}

pub fn instance(params: &ModParams) -> Result<ZooInstance> {
    let (source, map) = mod_reduction(params)?;
    let src = Cells {
        cells: params.cells(),
        values: 1 << params.exp,
    };
    let tgt = Cells {
        cells: params.cells(),
        values: 1 << params.sub_exp,
    };
    let labels = (0..source.size()).map(|c| src.label(c, params.positions)).collect();
    let target_labels = (0..map.target().size()).map(|c| tgt.label(c, params.positions)).collect();
    let mut inst = ZooInstance::new(
        "modred",
        format!(
            "exp={} sub_exp={} coords={} positions={}",
            params.exp, params.sub_exp, params.coords, params.positions
        ),
        NamedPoset {
            name: "modred".into(),
            poset: source,
            labels,
        },
    );
    inst.maps.push(BundledMap {
        name: "reduce".into(),
        on: 0,
        map,
        target_labels,
        scope: None,
    });
    Ok(inst)
}

/// Changes `count` seeded single entries of `map` to a different target
/// element; returns the mutated maps.
pub fn mutations(map: &ProjectionMap, count: usize, seed: u64) -> Vec<ProjectionMap> {
    let dom = map.domain();
    let t = map.target().size();
    let mut r = rng(seed);
    let mut out = Vec::new();
    if t < 2 || dom.is_empty() {
        return out;
    }
    while out.len() < count {
        let s = dom[r.random_range(0..dom.len())];
        let old = map.image(s).expect("domain element");
        let new = (old + r.random_range(1..t)) % t;
        out.push(map.with_entry(s, new).expect("valid entry"));
    }
    out
}

pub fn checks(params: &ModParams) -> Result<Vec<CheckReport>> {
    let inst = instance(params)?;
    let mut out = inst.standard_checks()?;
    let map = &inst.maps[0].map;
    let survivors: Vec<usize> = mutations(map, 10, 0)
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            check_projection_map(inst.poset(), m, &ProjectionScope::full())
                .map(|c| c.monotone.is_none() && c.lifting.is_none())
                .unwrap_or(false)
        })
        .map(|(i, _)| i)
        .collect();
    out.push(CheckReport::from_failure(
        "modred.reduce.mutations_detected",
        (!survivors.is_empty()).then(|| format!("surviving={survivors:?}")),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_images() {
        let (src, map) = mod_reduction(&ModParams::default()).unwrap();
        assert_eq!(src.size(), 25);
        assert_eq!(map.target().size(), 9);
        // {0.0:3} reduces to {0.0:1}.
        let s = 4;
        assert_eq!(map.image(s), Some(2));
    }

    #[test]
    fn full_exponent_is_identity_shaped() {
        let p = ModParams {
            sub_exp: 2,
            ..ModParams::default()
        };
        let (src, map) = mod_reduction(&p).unwrap();
        assert!((0..src.size()).all(|c| map.image(c) == Some(c)));
        assert!(check_projection_map(&src, &map, &ProjectionScope::full()).unwrap().passed());
    }

    #[test]
    fn default_suite_passes() {
        let failed: Vec<_> = checks(&ModParams::default()).unwrap().into_iter().filter(|r| !r.passed()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn sub_exponent_above_exponent_is_rejected() {
        let p = ModParams {
            sub_exp: 3,
            ..ModParams::default()
        };
        assert!(mod_reduction(&p).is_err());
    }
}
