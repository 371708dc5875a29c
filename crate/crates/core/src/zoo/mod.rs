//! Finite truncations of forcing posets, each bundled with the suborders,
//! dense sets and projection maps that come with it.
//!
//! Every instance module exposes a parameter struct with defaults, an
//! `instance` builder producing a [`ZooInstance`] and a `checks` function
//! running the instance's full suite.

pub mod amoeba;
pub mod chain;
pub mod cohen;
pub mod evdiff;
pub mod ladder;
pub mod modred;
pub mod spos;
pub mod tennenbaum;

use fixedbitset::FixedBitSet;

use crate::embeddings::{check_projection_map, regularity_reports, ProjectionMap, ProjectionScope};
use crate::error::{check_size, max_elements, Result};
use crate::order::{is_dense_subset, FinitePoset, Suborder};
use crate::report::CheckReport;

/// A poset together with a printable label per element.
#[derive(Clone, Debug)]
pub struct NamedPoset {
    pub name: String,
    pub poset: FinitePoset,
    pub labels: Vec<String>,
}

/// A bundled object living over `posets[on]` of its instance.
#[derive(Clone, Debug)]
pub struct Bundled<T> {
    pub name: String,
    pub on: usize,
    pub item: T,
}

#[derive(Clone, Debug)]
pub struct BundledMap {
    pub name: String,
    pub on: usize,
    pub map: ProjectionMap,
    pub target_labels: Vec<String>,
    /// Checked over the full domain when `None`.
    pub scope: Option<MapScope>,
}

/// A finite stand-in for a [`ProjectionScope`]: the source elements that
/// must have a domain element below them, and the source and target
/// elements the lifting clause quantifies over. `lift_targets` also limits
/// the target elements that must lie above an image.
#[derive(Clone, Debug)]
pub struct MapScope {
    pub name: String,
    pub density: Option<FixedBitSet>,
    pub lift_sources: Option<FixedBitSet>,
    pub lift_targets: Option<FixedBitSet>,
}

impl MapScope {
    pub fn to_scope(&self) -> ProjectionScope<'_> {
        let has = |m: &Option<FixedBitSet>, i: usize| m.as_ref().is_none_or(|m| m.contains(i));
        ProjectionScope {
            name: self.name.clone(),
            density: Box::new(move |x| has(&self.density, x)),
            roots: Box::new(move |r| has(&self.lift_targets, r)),
            lifting: Box::new(move |q, r| has(&self.lift_sources, q) && has(&self.lift_targets, r)),
        }
    }
}

/// A set claimed dense, either everywhere or below every element of
/// `scope`.
#[derive(Clone, Debug)]
pub struct DenseSet {
    pub set: FixedBitSet,
    pub scope: Option<FixedBitSet>,
}

/// A materialised zoo poset. `posets[0]` is the instance's main poset; some
/// instances carry extra source posets for their maps.
#[derive(Clone, Debug)]
pub struct ZooInstance {
    pub name: String,
    pub params: String,
    pub posets: Vec<NamedPoset>,
    pub suborders: Vec<Bundled<Suborder>>,
    pub dense_sets: Vec<Bundled<DenseSet>>,
    pub maps: Vec<BundledMap>,
}

impl ZooInstance {
    pub(crate) fn new(name: &str, params: String, main: NamedPoset) -> Self {
        ZooInstance {
            name: name.to_string(),
            params,
            posets: vec![main],
            suborders: Vec::new(),
            dense_sets: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.posets[0].poset
    }

    pub fn labels(&self) -> &[String] {
        &self.posets[0].labels
    }

    /// Index of the element labelled `label` in the main poset.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Regularity of every bundled suborder by all three routes, density of
    /// every bundled dense set, and the projection clauses of every bundled
    /// map over its full domain.
    pub fn standard_checks(&self) -> Result<Vec<CheckReport>> {
        let mut out = Vec::new();
        for s in &self.suborders {
            let p = &self.posets[s.on].poset;
            out.extend(regularity_reports(p, &s.item, &format!("{}.{}", self.name, s.name))?);
        }
        for d in &self.dense_sets {
            let p = &self.posets[d.on].poset;
            let witness = match &d.item.scope {
                None => {
                    let dense = is_dense_subset(p, &d.item.set)?;
                    (!dense).then(|| p.minimal().difference(&d.item.set).next().unwrap_or(0))
                }
                Some(scope) => {
                    p.check_set(scope)?;
                    scope.ones().find(|&x| p.down(x).is_disjoint(&d.item.set))
                }
            };
            out.push(CheckReport::from_failure(
                format!("{}.{}.dense", self.name, d.name),
                witness.map(|x| format!("undominated={x}")),
            ));
        }
        for m in &self.maps {
            let p = &self.posets[m.on].poset;
            let check = match &m.scope {
                None => check_projection_map(p, &m.map, &ProjectionScope::full())?,
                Some(s) => check_projection_map(p, &m.map, &s.to_scope())?,
            };
            out.extend(check.reports(&format!("{}.{}", self.name, m.name)));
        }
        Ok(out)
    }
}

/// Builds the poset on `conds` ordered by `leq`, refusing anything above
/// the global element bound.
pub(crate) fn materialize<C>(what: &str, conds: &[C], leq: impl Fn(&C, &C) -> bool) -> Result<FinitePoset> {
    check_size(what, conds.len() as u128, max_elements() as u128)?;
    FinitePoset::from_fn(conds.len(), |a, b| leq(&conds[a], &conds[b]))
}

/// All subsets of `0..n` as bitmasks, in increasing order.
pub(crate) fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0..1u32 << n
}

pub(crate) fn show_bits(mask: u32) -> String {
    let xs: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    xs.join(",")
}

/// A checked `key=value` parameter list, as accepted by the command line.
pub fn parse_params(pairs: &[(String, String)], known: &[&str]) -> Result<std::collections::BTreeMap<String, String>> {
    let mut out = std::collections::BTreeMap::new();
    for (k, v) in pairs {
        if !known.contains(&k.as_str()) {
            return Err(crate::error::Error::Domain(format!(
                "unknown parameter {k:?}; expected one of {}",
                known.join(", ")
            )));
        }
        out.insert(k.clone(), v.clone());
    }
    Ok(out)
}

pub(crate) fn param_usize(map: &std::collections::BTreeMap<String, String>, key: &str, default: usize) -> Result<usize> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| crate::error::Error::Domain(format!("parameter {key} expects a count, got {v:?}"))),
    }
}

/// Parses `1,3` into a list of counts.
pub(crate) fn parse_list(key: &str, v: &str) -> Result<Vec<usize>> {
    v.split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| crate::error::Error::Domain(format!("parameter {key} expects a list of counts, got {v:?}")))
        })
        .collect()
}

/// The names accepted by [`build`] and [`run_checks`].
pub const NAMES: [&str; 8] = ["amoeba", "chain", "cohen", "evdiff", "ladder", "modred", "spos", "tennenbaum"];

/// Builds the named instance from `key=value` parameters.
pub fn build(name: &str, params: &[(String, String)]) -> Result<ZooInstance> {
    match name {
        "amoeba" => amoeba::instance(&amoeba::AmoebaParams::from_pairs(params)?),
        "chain" => chain::instance(&chain::ChainParams::from_pairs(params)?),
        "cohen" => cohen::instance(&cohen::CohenParams::from_pairs(params)?),
        "evdiff" => evdiff::instance(&evdiff::EvDiffParams::from_pairs(params)?),
        "ladder" => ladder::instance(&ladder::LadderParams::from_pairs(params)?),
        "modred" => modred::instance(&modred::ModParams::from_pairs(params)?),
        "spos" => spos::instance(&spos::SPosetParams::from_pairs(params)?),
        "tennenbaum" => tennenbaum::instance(&tennenbaum::TennenbaumParams::from_pairs(params)?),
        _ => Err(crate::error::Error::Domain(format!(
            "unknown zoo instance {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

/// Runs the named instance's full bundled suite.
pub fn run_checks(name: &str, params: &[(String, String)]) -> Result<Vec<CheckReport>> {
    match name {
        "amoeba" => amoeba::checks(&amoeba::AmoebaParams::from_pairs(params)?),
        "chain" => chain::checks(&chain::ChainParams::from_pairs(params)?),
        "cohen" => cohen::checks(&cohen::CohenParams::from_pairs(params)?),
        "evdiff" => evdiff::checks(&evdiff::EvDiffParams::from_pairs(params)?),
        "ladder" => ladder::checks(&ladder::LadderParams::from_pairs(params)?),
        "modred" => modred::checks(&modred::ModParams::from_pairs(params)?),
        "spos" => spos::checks(&spos::SPosetParams::from_pairs(params)?),
        "tennenbaum" => tennenbaum::checks(&tennenbaum::TennenbaumParams::from_pairs(params)?),
        _ => build(name, params).map(|_| Vec::new()),
    }
}
