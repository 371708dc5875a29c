//! Seeded check batteries behind the `suite` verb.
//!
//! Every job derives its own random stream from the suite seed and the job
//! name, so jobs can run in any order (and in parallel) without changing a
//! single report byte.

use fixedbitset::FixedBitSet;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use posetforge::boolean::{completion, generated_subalgebra, FiniteBooleanAlgebra};
use posetforge::embeddings::{check_projection_map, is_regular_suborder, ProjectionMap, ProjectionScope, Route};
use posetforge::games::{g, h, Player};
use posetforge::order::{
    compatibility_closure, is_dense_subset, is_predense, is_regular_open, regular_open_closure, FinitePoset, Suborder,
};
use posetforge::random::{all_labeled_posets, all_suborders, random_poset, random_suborder, rng};
use posetforge::report::CheckReport;
use posetforge::zoo;
use posetforge::Result;
use posetforge_oracle as oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Smoke,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub level: Level,
    pub max_n: usize,
    pub seed: u64,
    pub with_oracle: bool,
}

impl SuiteConfig {
    pub fn new(level: Level, max_n: Option<usize>, seed: u64, with_oracle: bool) -> Self {
        let default_n = match level {
            Level::Smoke => 3,
            Level::Exhaustive => 5,
        };
        SuiteConfig {
            level,
            max_n: max_n.unwrap_or(default_n).min(posetforge::random::MAX_LABELED),
            seed,
            with_oracle,
        }
    }

    /// The argument list that reproduces this run.
    pub fn args(&self) -> Vec<String> {
        let level = match self.level {
            Level::Smoke => "smoke",
            Level::Exhaustive => "exhaustive",
        };
        let mut v: Vec<String> = ["suite", "--level", level, "--max-n"].iter().map(|s| s.to_string()).collect();
        v.push(self.max_n.to_string());
        v.push("--seed".into());
        v.push(self.seed.to_string());
        if self.with_oracle {
            v.push("--with-oracle".into());
        }
        v
    }

    fn count(&self, smoke: usize, exhaustive: usize) -> usize {
        match self.level {
            Level::Smoke => smoke,
            Level::Exhaustive => exhaustive,
        }
    }

    fn stream(&self, job: &str) -> ChaCha8Rng {
        let h = job
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        rng(self.seed ^ h)
    }
}

type Job = Box<dyn Fn(&SuiteConfig) -> Vec<CheckReport> + Send + Sync>;

fn job(f: impl Fn(&SuiteConfig) -> Vec<CheckReport> + Send + Sync + 'static) -> Job {
    Box::new(f)
}

/// Turns an error inside a check into a failing report.
fn guard(name: &str, r: Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::fail(name, format!("error:{e}")))
}

fn guard_all(name: &str, r: Result<Vec<CheckReport>>) -> Vec<CheckReport> {
    r.unwrap_or_else(|e| vec![CheckReport::fail(name, format!("error:{e}"))])
}

/// `n4:0<2,1<2` style description of a poset by its covers.
pub fn describe(p: &FinitePoset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    format!("n{}:{}", p.size(), covers.join(","))
}

fn describe_sub(q: &Suborder) -> String {
    let ms: Vec<String> = q.members().iter().map(|m| m.to_string()).collect();
    format!("q={}", ms.join("."))
}

fn random_instance(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> Result<FinitePoset> {
    let n = r.random_range(lo..=hi);
    let density = r.random_range(0.1..0.6);
    random_poset(n, density, r)
}

fn regular(p: &FinitePoset, q: &Suborder) -> Result<bool> {
    Ok(is_regular_suborder(p, q, Route::Antichain)?.regular)
}

fn set_of(n: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(members);
    s
}

/// Minimal elements plus a random selection of the rest: always dense.
fn dense_suborder(p: &FinitePoset, r: &mut ChaCha8Rng) -> Suborder {
    let members = (0..p.size()).filter(|&x| p.minimal().contains(x) || r.random_bool(0.4));
    Suborder::new(p, members).expect("in range")
}

// ---- completion -----------------------------------------------------------

fn completion_jobs(jobs: &mut Vec<Job>) {
    for k in 1..=3usize {
        jobs.push(job(move |_| {
            let name = format!("completion.cohen{k}.size");
            vec![guard(
                &name,
                (|| {
                    let ro = completion(&zoo::cohen::cohen_poset(k)?);
                    let ok = ro.atom_count() == 1 << k && ro.size() == Some(1u128 << (1 << k));
                    Ok(CheckReport::from_failure(
                        &name,
                        (!ok).then(|| format!("atoms={};size={:?}", ro.atom_count(), ro.size())),
                    ))
                })(),
            )]
        }));
    }
    jobs.push(job(|cfg| {
        let name = "completion.random.atoms_are_minimal_elements";
        let mut r = cfg.stream(name);
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(50, 300) {
                    let p = random_instance(&mut r, 1, 12)?;
                    let ro = completion(&p);
                    if ro.atom_count() != p.minimal_elements().len() {
                        return Ok(CheckReport::fail(name, describe(&p)));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
}

fn oracle_completion_jobs(jobs: &mut Vec<Job>) {
    for k in 1..=2usize {
        jobs.push(job(move |_| {
            let name = format!("oracle.completion.cohen{k}");
            vec![guard(
                &name,
                (|| {
                    let p = zoo::cohen::cohen_poset(k)?;
                    let brute = oracle::brute_regular_open_count(&p)? as u128;
                    let fast = completion(&p).size();
                    Ok(CheckReport::from_failure(
                        &name,
                        (fast != Some(brute)).then(|| format!("fast={fast:?};brute={brute}")),
                    ))
                })(),
            )]
        }));
    }
    jobs.push(job(|cfg| {
        let name = "oracle.completion.random";
        let mut r = cfg.stream(name);
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(30, 200) {
                    let p = random_instance(&mut r, 1, 10)?;
                    let brute = oracle::brute_regular_open_count(&p)? as u128;
                    if completion(&p).size() != Some(brute) {
                        return Ok(CheckReport::fail(name, describe(&p)));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
}

// ---- regularity -----------------------------------------------------------

/// First suborder on which the three routes disagree (and, with `brute`,
/// on which they disagree with the oracle).
fn disagreement(p: &FinitePoset, q: &Suborder, brute: bool) -> Result<Option<String>> {
    let verdicts: Vec<bool> = Route::ALL
        .iter()
        .map(|&r| is_regular_suborder(p, q, r).map(|v| v.regular))
        .collect::<Result<_>>()?;
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Ok(Some(format!("{};{};routes={verdicts:?}", describe(p), describe_sub(q))));
    }
    if brute {
        let truth = oracle::brute_regularity(p, q)?;
        if truth != verdicts[0] {
            return Ok(Some(format!(
                "{};{};fast={};brute={truth}",
                describe(p),
                describe_sub(q),
                verdicts[0]
            )));
        }
    }
    Ok(None)
}

fn regularity_jobs(jobs: &mut Vec<Job>, cfg: &SuiteConfig, brute: bool) {
    let prefix = if brute { "oracle.regularity" } else { "regularity" };
    for n in 1..=cfg.max_n {
        let name = format!("{prefix}.labeled.n{n}");
        jobs.push(job(move |_| {
            vec![guard(
                &name,
                (|| {
                    let posets = all_labeled_posets(n)?;
                    let found = posets.par_iter().find_map_first(|p| {
                        all_suborders(p)
                            .iter()
                            .find_map(|q| disagreement(p, q, brute).unwrap_or_else(|e| Some(format!("error:{e}"))))
                    });
                    Ok(CheckReport::from_failure(&name, found))
                })(),
            )]
        }));
    }
    let name = format!("{prefix}.random");
    jobs.push(job(move |cfg| {
        let mut r = cfg.stream("regularity.random");
        vec![guard(
            &name,
            (|| {
                for _ in 0..cfg.count(30, 300) {
                    let p = random_instance(&mut r, 1, 10)?;
                    let q = random_suborder(&p, &mut r);
                    if let Some(w) = disagreement(&p, &q, brute)? {
                        return Ok(CheckReport::fail(&name, w));
                    }
                }
                Ok(CheckReport::pass(&name))
            })(),
        )]
    }));
}

// ---- closure properties of regularity -------------------------------------

/// `Q ≤reg P` and `R ≤reg Q` give `R ≤reg P`.
pub fn transitivity_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    let p = random_instance(r, 2, 9)?;
    let q = if r.random_bool(0.5) {
        dense_suborder(&p, r)
    } else {
        random_suborder(&p, r)
    };
    let qp = p.induced(&q);
    let r_local = if r.random_bool(0.5) {
        dense_suborder(&qp, r).members().to_vec()
    } else {
        random_suborder(&qp, r).members().to_vec()
    };
    let r_in_q = Suborder::new(&qp, r_local.iter().copied())?;
    let r_in_p = Suborder::new(&p, r_local.iter().map(|&i| q.members()[i]))?;
    if regular(&p, &q)? && regular(&qp, &r_in_q)? && !regular(&p, &r_in_p)? {
        return Ok(Some(format!("{};{};r={:?}", describe(&p), describe_sub(&q), r_in_p.members())));
    }
    Ok(None)
}

/// `R ⊆ Q ⊆ P` and `R ≤reg P` give `R ≤reg Q`, for `Q` computing
/// compatibility as `P` does.
pub fn suborder_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    intermediate_instance(r, true)
}

/// The same statement with no condition on `Q`; counterexamples exist.
pub fn unrestricted_intermediate_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    intermediate_instance(r, false)
}

fn intermediate_instance(r: &mut ChaCha8Rng, closed: bool) -> Result<Option<String>> {
    let p = random_instance(r, 2, 9)?;
    let rr = if r.random_bool(0.5) {
        dense_suborder(&p, r)
    } else {
        random_suborder(&p, r)
    };
    let q = Suborder::new(&p, (0..p.size()).filter(|&x| rr.contains(x) || r.random_bool(0.5)))?;
    let q = if closed { compatibility_closure(&p, &q) } else { q };
    let qp = p.induced(&q);
    let local = Suborder::new(&qp, rr.members().iter().map(|m| q.members().binary_search(m).expect("R ⊆ Q")))?;
    if regular(&p, &rr)? && !regular(&qp, &local)? {
        return Ok(Some(format!("{};{};r={:?}", describe(&p), describe_sub(&q), rr.members())));
    }
    Ok(None)
}

/// A dense suborder is regular.
pub fn dense_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    let p = random_instance(r, 1, 10)?;
    let q = if r.random_bool(0.7) {
        dense_suborder(&p, r)
    } else {
        random_suborder(&p, r)
    };
    if is_dense_subset(&p, q.mask())? && !regular(&p, &q)? {
        return Ok(Some(format!("{};{}", describe(&p), describe_sub(&q))));
    }
    Ok(None)
}

/// The positive part of a powerset algebra with `atoms` atoms, elements
/// indexed by `mask - 1`.
pub fn positive_part(atoms: usize) -> Result<FinitePoset> {
    let n = (1usize << atoms) - 1;
    FinitePoset::from_fn(n, |a, b| (a + 1) & !(b + 1) == 0)
}

/// Every generated subalgebra, restricted to its nonzero elements, is a
/// regular suborder of the algebra's nonzero elements.
pub fn subalgebra_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    let atoms = r.random_range(1..=4);
    let b = FiniteBooleanAlgebra::new(atoms)?;
    let one = (1u64 << atoms) - 1;
    let xs: Vec<_> = (0..r.random_range(0..=3)).map(|_| b.from_mask(r.random_range(0..=one))).collect();
    let a = generated_subalgebra(&b, &xs)?;
    let p = positive_part(atoms)?;
    let members = a
        .elements()?
        .iter()
        .map(|e| e.ones().fold(0usize, |m, i| m | 1 << i))
        .filter(|&m| m != 0)
        .map(|m| m - 1)
        .collect::<Vec<_>>();
    let q = Suborder::new(&p, members)?;
    if !regular(&p, &q)? {
        return Ok(Some(format!("atoms={atoms};blocks={}", a.blocks().len())));
    }
    Ok(None)
}

/// An increasing chain of suborders has its last member as maximum, and
/// the union inherits that member's regularity verdict.
pub fn directed_instance(r: &mut ChaCha8Rng) -> Result<Option<String>> {
    let p = random_instance(r, 1, 9)?;
    let mut current = random_suborder(&p, r).mask().clone();
    let mut family = vec![current.clone()];
    for _ in 0..r.random_range(1..4) {
        for x in 0..p.size() {
            if r.random_bool(0.3) {
                current.insert(x);
            }
        }
        family.push(current.clone());
    }
    let mut union = p.empty_set();
    for f in &family {
        union.union_with(f);
    }
    let maximum = family.iter().find(|f| family.iter().all(|g| g.is_subset(f)));
    match maximum {
        Some(m) if *m == union => {
            let u = Suborder::from_mask(&p, union.clone())?;
            let m = Suborder::from_mask(&p, m.clone())?;
            Ok((regular(&p, &u)? != regular(&p, &m)?).then(|| describe(&p)))
        }
        _ => Ok(Some(format!("{};no_maximum", describe(&p)))),
    }
}

type Instance = fn(&mut ChaCha8Rng) -> Result<Option<String>>;

fn property_jobs(jobs: &mut Vec<Job>) {
    let props: [(&str, Instance, usize, usize); 5] = [
        ("regularity.property.transitive", transitivity_instance, 100, 1000),
        ("regularity.property.inherited_by_intermediate", suborder_instance, 100, 1000),
        ("regularity.property.dense_is_regular", dense_instance, 100, 1000),
        ("regularity.property.subalgebras_regular", subalgebra_instance, 50, 300),
        ("regularity.property.directed_union", directed_instance, 50, 300),
    ];
    jobs.push(job(|cfg| {
        let name = "regularity.property.unrestricted_intermediate_control";
        let mut r = cfg.stream(name);
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(2000, 5000) {
                    if unrestricted_intermediate_instance(&mut r)?.is_some() {
                        return Ok(CheckReport::pass(name));
                    }
                }
                Ok(CheckReport::fail(name, "no_counterexample_found"))
            })(),
        )]
    }));
    for (name, f, smoke, exhaustive) in props {
        jobs.push(job(move |cfg| {
            let mut r = cfg.stream(name);
            vec![guard(
                name,
                (|| {
                    for _ in 0..cfg.count(smoke, exhaustive) {
                        if let Some(w) = f(&mut r)? {
                            return Ok(CheckReport::fail(name, w));
                        }
                    }
                    Ok(CheckReport::pass(name))
                })(),
            )]
        }));
    }
}

// ---- order ----------------------------------------------------------------

fn order_jobs(jobs: &mut Vec<Job>, brute: bool) {
    let name = if brute {
        "oracle.order.regular_open"
    } else {
        "order.regular_open.idempotent"
    };
    jobs.push(job(move |cfg| {
        let mut r = cfg.stream("order.regular_open");
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(50, 300) {
                    let p = random_instance(&mut r, 1, 12)?;
                    let u = set_of(p.size(), (0..p.size()).filter(|_| r.random_bool(0.3)));
                    let c = regular_open_closure(&p, &u)?;
                    let bad = if brute {
                        c != oracle::brute_regular_open(&p, &u)
                    } else {
                        regular_open_closure(&p, &c)? != c || !is_regular_open(&p, &c)?
                    };
                    if bad {
                        return Ok(CheckReport::fail(
                            name,
                            format!("{};u={:?}", describe(&p), u.ones().collect::<Vec<_>>()),
                        ));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
    if brute {
        let name = "oracle.order.predense";
        jobs.push(job(move |cfg| {
            let mut r = cfg.stream(name);
            vec![guard(
                name,
                (|| {
                    for _ in 0..cfg.count(50, 300) {
                        let p = random_instance(&mut r, 1, 12)?;
                        let d = set_of(p.size(), (0..p.size()).filter(|_| r.random_bool(0.3)));
                        let below = r.random_range(0..p.size());
                        if is_predense(&p, &d, below)? != oracle::brute_predense(&p, &d, below) {
                            return Ok(CheckReport::fail(name, format!("{};below={below}", describe(&p))));
                        }
                    }
                    Ok(CheckReport::pass(name))
                })(),
            )]
        }));
    }
}

// ---- boolean --------------------------------------------------------------

fn boolean_jobs(jobs: &mut Vec<Job>, brute: bool) {
    let name = if brute {
        "oracle.boolean.generated_subalgebra"
    } else {
        "boolean.generated_subalgebra.contains_generators"
    };
    jobs.push(job(move |cfg| {
        let mut r = cfg.stream("boolean.generated");
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(30, 200) {
                    let atoms = r.random_range(1..=5);
                    let b = FiniteBooleanAlgebra::new(atoms)?;
                    let one = (1u64 << atoms) - 1;
                    let xs: Vec<_> = (0..r.random_range(0..=3)).map(|_| b.from_mask(r.random_range(0..=one))).collect();
                    let fast = generated_subalgebra(&b, &xs)?;
                    let bad = if brute {
                        let slow = oracle::brute_subalgebra_closure(&b, &xs)?;
                        let key = |a: &posetforge::PartitionSubalgebra| {
                            let mut v: Vec<Vec<usize>> = a.blocks().iter().map(|x| x.ones().collect()).collect();
                            v.sort();
                            v
                        };
                        key(&fast) != key(&slow)
                    } else {
                        !xs.iter().all(|x| fast.contains(x))
                    };
                    if bad {
                        let shown: Vec<String> = xs.iter().map(posetforge::boolean::show).collect();
                        return Ok(CheckReport::fail(name, format!("atoms={atoms};x={}", shown.join("."))));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
}

// ---- projections ----------------------------------------------------------

fn mutated_identity(r: &mut ChaCha8Rng) -> Result<(FinitePoset, ProjectionMap)> {
    let p = random_instance(r, 1, 9)?;
    let n = p.size();
    let mut pm = ProjectionMap::identity(&p);
    for _ in 0..r.random_range(0..=2) {
        pm = pm.with_entry(r.random_range(0..n), r.random_range(0..n))?;
    }
    Ok((p, pm))
}

fn projection_jobs(jobs: &mut Vec<Job>, brute: bool) {
    let name = if brute {
        "oracle.projection.clauses"
    } else {
        "projection.lifting_implies_antichains"
    };
    jobs.push(job(move |cfg| {
        let mut r = cfg.stream("projection.mutated");
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(50, 300) {
                    let (p, pm) = mutated_identity(&mut r)?;
                    let fast = check_projection_map(&p, &pm, &ProjectionScope::full())?;
                    let bad = if brute {
                        let slow = oracle::brute_projection(&p, &pm)?;
                        (fast.monotone.is_none(), fast.lifting.is_none(), fast.antichains.is_none())
                            != (slow.monotone, slow.lifting, slow.antichains)
                    } else {
                        fast.monotone.is_none() && fast.lifting.is_none() && fast.antichains.is_some()
                    };
                    if bad {
                        return Ok(CheckReport::fail(name, format!("{};map={:?}", describe(&p), pm.pairs())));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
    if !brute {
        let name = "projection.identity_passes";
        jobs.push(job(move |cfg| {
            let mut r = cfg.stream(name);
            vec![guard(
                name,
                (|| {
                    for _ in 0..cfg.count(30, 200) {
                        let p = random_instance(&mut r, 1, 12)?;
                        if !check_projection_map(&p, &ProjectionMap::identity(&p), &ProjectionScope::full())?.passed() {
                            return Ok(CheckReport::fail(name, describe(&p)));
                        }
                    }
                    Ok(CheckReport::pass(name))
                })(),
            )]
        }));
    }
}

// ---- games ----------------------------------------------------------------

fn game_jobs(jobs: &mut Vec<Job>, cfg: &SuiteConfig) {
    let max_atoms = cfg.count(4, 5);
    for atoms in 1..=max_atoms {
        jobs.push(job(move |_| {
            let solve = format!("game.h.atoms{atoms}.i_wins");
            let comp = format!("game.h.atoms{atoms}.complement_strategy");
            let out = (|| {
                let b = FiniteBooleanAlgebra::new(atoms)?;
                let sol = h::solve(&b)?;
                let v = h::verify_strategy(&b, &h::complement_strategy(atoms))?;
                Ok(vec![
                    CheckReport::from_failure(&solve, (sol.winner != Player::I).then(|| format!("winner={}", sol.winner))),
                    v.report(&comp),
                ])
            })();
            guard_all(&solve, out)
        }));
    }
    jobs.push(job(|_| {
        let name = "game.h.constant_strategy_loses";
        vec![guard(
            name,
            (|| {
                let b = FiniteBooleanAlgebra::new(2)?;
                let v = h::verify_strategy(&b, &h::constant_strategy(2, 0b01))?;
                let lasso = v.certificates.iter().any(|c| !c.acyclic());
                Ok(CheckReport::from_failure(
                    name,
                    (v.winning || !lasso).then(|| "no_lasso".to_string()),
                ))
            })(),
        )]
    }));
    jobs.push(job(|cfg| {
        let name = "game.h.certificates_match_play";
        let mut r = cfg.stream(name);
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(20, 200) {
                    let atoms = r.random_range(1..=3);
                    let b = FiniteBooleanAlgebra::new(atoms)?;
                    let sigma = h::random_strategy(atoms, &mut r);
                    let cert = h::verify_strategy(&b, &sigma)?.winning;
                    if cert != h::strategy_wins(&b, &sigma)? {
                        return Ok(CheckReport::fail(name, format!("atoms={atoms};certificates={cert}")));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
    type Build = fn() -> Result<FinitePoset>;
    let named: [(&str, Build); 3] = [
        ("chain3", || FinitePoset::chain(3)),
        ("antichain2", || FinitePoset::antichain(2)),
        ("cohen1", || zoo::cohen::cohen_poset(1)),
    ];
    for (label, make) in named {
        jobs.push(job(move |_| {
            let name = format!("game.g.{label}.ii_wins");
            vec![guard(
                &name,
                (|| {
                    let p = make()?;
                    let sol = g::solve(&p)?;
                    let v = g::verify_strategy(&p, &sol.strategy)?;
                    let ok = sol.winner == Player::II && v.winning;
                    Ok(CheckReport::from_failure(
                        &name,
                        (!ok).then(|| format!("winner={};verified={}", sol.winner, v.winning)),
                    ))
                })(),
            )]
        }));
    }
    jobs.push(job(|cfg| {
        let name = "game.g.random.solution_verifies";
        let mut r = cfg.stream(name);
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(10, 60) {
                    let p = random_instance(&mut r, 1, 5)?;
                    let sol = g::solve(&p)?;
                    if !g::verify_strategy(&p, &sol.strategy)?.winning {
                        return Ok(CheckReport::fail(name, format!("{};winner={}", describe(&p), sol.winner)));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
}

fn oracle_game_jobs(jobs: &mut Vec<Job>, cfg: &SuiteConfig) {
    for atoms in 1..=cfg.count(4, 5) {
        jobs.push(job(move |_| {
            let name = format!("oracle.game.h.atoms{atoms}.tree");
            vec![guard(
                &name,
                (|| {
                    let b = FiniteBooleanAlgebra::new(atoms)?;
                    let fast = h::solve(&b)?.winner;
                    let slow = oracle::brute_game_tree(&b, atoms + 1)?;
                    Ok(CheckReport::from_failure(
                        &name,
                        (fast != slow).then(|| format!("fast={fast};brute={slow}")),
                    ))
                })(),
            )]
        }));
    }
    jobs.push(job(|cfg| {
        let name = "oracle.game.h.strategies";
        let mut r = cfg.stream("game.h.certificates_match_play");
        vec![guard(
            name,
            (|| {
                for _ in 0..cfg.count(20, 200) {
                    let atoms = r.random_range(1..=3);
                    let b = FiniteBooleanAlgebra::new(atoms)?;
                    let sigma = h::random_strategy(atoms, &mut r);
                    let cert = h::verify_strategy(&b, &sigma)?.winning;
                    let slow = oracle::brute_strategy_wins(atoms, |s| sigma.get(&h::Position::i(s)).unwrap_or(0));
                    if cert != slow {
                        return Ok(CheckReport::fail(name, format!("atoms={atoms};certificates={cert}")));
                    }
                }
                Ok(CheckReport::pass(name))
            })(),
        )]
    }));
}

// ---- zoo ------------------------------------------------------------------

type Params = Vec<(String, String)>;

/// Zoo runs as `(report prefix, instance name, parameters)`.
fn zoo_runs(cfg: &SuiteConfig) -> Vec<(String, &'static str, Params)> {
    let mut runs: Vec<_> = zoo::NAMES.iter().map(|&n| (n.to_string(), n, Vec::new())).collect();
    if cfg.level == Level::Exhaustive {
        let pairs = |kv: &[(&str, &str)]| kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<Vec<_>>();
        runs.push((
            "ladder_wide".into(),
            "ladder",
            pairs(&[("n", "8"), ("ladders", "4:1,3/7:2,5,6"), ("stationary", "4,7")]),
        ));
        runs.push(("cohen3".into(), "cohen", pairs(&[("k", "3")])));
    }
    runs
}

fn zoo_jobs(jobs: &mut Vec<Job>, cfg: &SuiteConfig) {
    for (label, name, params) in zoo_runs(cfg) {
        jobs.push(job(move |_| {
            let head = format!("zoo.{label}.build");
            guard_all(&head, zoo::run_checks(name, &params))
                .into_iter()
                .map(|mut r| {
                    let rest = r.name.strip_prefix(name).unwrap_or(&r.name).trim_start_matches('.').to_string();
                    r.name = format!("zoo.{label}.{rest}");
                    r
                })
                .collect()
        }));
    }
}

/// Largest zoo poset the oracle's cubic compatibility tables are built for.
const ORACLE_ZOO_LIMIT: usize = 200;

fn oracle_zoo_jobs(jobs: &mut Vec<Job>, cfg: &SuiteConfig) {
    for (label, name, params) in zoo_runs(cfg) {
        jobs.push(job(move |_| {
            let head = format!("oracle.zoo.{label}.build");
            guard_all(&head, oracle_zoo(&label, name, &params))
        }));
    }
}

fn oracle_zoo(label: &str, name: &str, params: &[(String, String)]) -> Result<Vec<CheckReport>> {
    let inst = zoo::build(name, params)?;
    let mut out = Vec::new();
    for s in &inst.suborders {
        let p = &inst.posets[s.on].poset;
        if p.size() > ORACLE_ZOO_LIMIT || s.item.len() > oracle::MAX_REGULARITY {
            continue;
        }
        let report = format!("oracle.zoo.{label}.{}.regular", s.name);
        let fast = is_regular_suborder(p, &s.item, Route::Antichain)?.regular;
        let slow = oracle::brute_regularity(p, &s.item)?;
        out.push(CheckReport::from_failure(
            report,
            (fast != slow).then(|| format!("fast={fast};brute={slow}")),
        ));
    }
    for d in &inst.dense_sets {
        let p = &inst.posets[d.on].poset;
        let report = format!("oracle.zoo.{label}.{}.dense", d.name);
        let (fast, slow) = match &d.item.scope {
            None => (is_dense_subset(p, &d.item.set)?, oracle::brute_dense(p, &d.item.set)),
            Some(scope) => {
                let fast = scope.ones().all(|x| !p.down(x).is_disjoint(&d.item.set));
                let slow = scope.ones().all(|x| d.item.set.ones().any(|y| p.leq(y, x)));
                (fast, slow)
            }
        };
        out.push(CheckReport::from_failure(
            report,
            (fast != slow).then(|| format!("fast={fast};brute={slow}")),
        ));
    }
    for m in &inst.maps {
        let p = &inst.posets[m.on].poset;
        if m.scope.is_some() || p.size() > ORACLE_ZOO_LIMIT || m.map.target().size() > oracle::MAX_PROJECTION_TARGET {
            continue;
        }
        let report = format!("oracle.zoo.{label}.{}.clauses", m.name);
        let fast = check_projection_map(p, &m.map, &ProjectionScope::full())?;
        let slow = oracle::brute_projection(p, &m.map)?;
        let fast = (fast.monotone.is_none(), fast.lifting.is_none(), fast.antichains.is_none());
        let slow = (slow.monotone, slow.lifting, slow.antichains);
        out.push(CheckReport::from_failure(
            report,
            (fast != slow).then(|| format!("fast={fast:?};brute={slow:?}")),
        ));
    }
    Ok(out)
}

// ---- entry point ----------------------------------------------------------

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut jobs = Vec::new();
    completion_jobs(&mut jobs);
    regularity_jobs(&mut jobs, cfg, false);
    property_jobs(&mut jobs);
    order_jobs(&mut jobs, false);
    boolean_jobs(&mut jobs, false);
    projection_jobs(&mut jobs, false);
    game_jobs(&mut jobs, cfg);
    zoo_jobs(&mut jobs, cfg);
    if cfg.with_oracle {
        oracle_completion_jobs(&mut jobs);
        regularity_jobs(&mut jobs, cfg, true);
        order_jobs(&mut jobs, true);
        boolean_jobs(&mut jobs, true);
        projection_jobs(&mut jobs, true);
        oracle_game_jobs(&mut jobs, cfg);
        oracle_zoo_jobs(&mut jobs, cfg);
    }
    jobs.par_iter().flat_map(|j| j(cfg)).collect()
}

/// The full report text: a header naming the reproducing arguments, sorted
/// result lines and the summary.
pub fn report_text(cfg: &SuiteConfig, reports: &[CheckReport]) -> String {
    format!("# posetforge {}\n{}", cfg.args().join(" "), posetforge::report::render(reports))
}
