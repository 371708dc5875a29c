//! One line per acceptance criterion. Runs as a plain binary so the lines
//! are always shown.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use posetforge::boolean::{completion, FiniteBooleanAlgebra};
use posetforge::embeddings::{check_projection_map, is_regular_suborder, ProjectionScope, Route};
use posetforge::games::{h, Player};
use posetforge::order::{FinitePoset, Suborder};
use posetforge::random::{all_labeled_posets, all_suborders, random_poset, random_suborder, rng};
use posetforge::report::{CheckReport, Status};
use posetforge::zoo::{self, cohen, ladder, modred};
use posetforge_cli::suite;
use posetforge_oracle::{brute_game_tree, brute_strategy_wins};

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{:.1}s", t.as_secs_f64()))
    } else {
        Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every named check exists and passes.
fn all_pass(reports: &[CheckReport], names: &[String]) -> Result<(), String> {
    for name in names {
        match reports.iter().find(|r| &r.name == name) {
            Some(r) if r.status == Status::Pass => {}
            Some(r) => return Err(format!("{} {:?} {:?}", name, r.status, r.witness)),
            None => return Err(format!("{name} missing")),
        }
    }
    Ok(())
}

fn c1() -> Outcome {
    let start = Instant::now();
    for k in 1..=3u32 {
        let ro = completion(&cohen::cohen_poset(k as usize).map_err(|e| e.to_string())?);
        let atoms = 1usize << k;
        require(ro.atom_count() == atoms, || format!("k={k}: {} atoms", ro.atom_count()))?;
        require(ro.size() == 1u128.checked_shl(atoms as u32), || {
            format!("k={k}: size {:?}", ro.size())
        })?;
    }
    within(start, Duration::from_secs(10))
}

/// Whether the three routes give the same verdict.
fn verdicts(p: &FinitePoset, q: &Suborder) -> Result<bool, String> {
    let v: Vec<bool> = Route::ALL
        .iter()
        .map(|&r| is_regular_suborder(p, q, r).map(|x| x.regular))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(v.iter().all(|&x| x == v[0]))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for n in 1..=5 {
        for p in all_labeled_posets(n).map_err(|e| e.to_string())? {
            for q in all_suborders(&p) {
                pairs += 1;
                require(verdicts(&p, &q)?, || {
                    format!("disagreement on {} / {:?}", suite::describe(&p), q.members())
                })?;
            }
        }
    }
    let mut r = rng(2);
    for _ in 0..300 {
        use rand::Rng;
        let n = r.random_range(1..=10);
        let p = random_poset(n, r.random_range(0.0..0.6), &mut r).map_err(|e| e.to_string())?;
        let q = random_suborder(&p, &mut r);
        require(verdicts(&p, &q)?, || {
            format!("disagreement on {} / {:?}", suite::describe(&p), q.members())
        })?;
    }
    within(start, Duration::from_secs(300)).map(|t| format!("{pairs} labeled pairs + 300 random, {t}"))
}

fn c3() -> Outcome {
    type Instance = fn(&mut rand_chacha::ChaCha8Rng) -> posetforge::Result<Option<String>>;
    let props: [(&str, Instance); 5] = [
        ("transitive", suite::transitivity_instance),
        ("intermediate", suite::suborder_instance),
        ("dense", suite::dense_instance),
        ("subalgebra", suite::subalgebra_instance),
        ("directed", suite::directed_instance),
    ];
    for (i, (name, f)) in props.iter().enumerate() {
        let mut r = rng(300 + i as u64);
        for _ in 0..1000 {
            if let Some(w) = f(&mut r).map_err(|e| e.to_string())? {
                return Err(format!("{name}: {w}"));
            }
        }
    }
    Ok("5 x 1000 instances".into())
}

fn c4() -> Outcome {
    let start = Instant::now();
    for atoms in 1..=4 {
        let b = FiniteBooleanAlgebra::new(atoms).map_err(|e| e.to_string())?;
        let sol = h::solve(&b).map_err(|e| e.to_string())?;
        require(sol.winner == Player::I, || format!("{atoms} atoms: winner {:?}", sol.winner))?;
        let tree = brute_game_tree(&b, atoms + 1).map_err(|e| e.to_string())?;
        require(tree == Player::I, || format!("{atoms} atoms: game tree says {tree:?}"))?;
        let v = h::verify_strategy(&b, &h::complement_strategy(atoms)).map_err(|e| e.to_string())?;
        require(v.winning && v.certificates.iter().all(|c| c.acyclic()), || {
            format!("{atoms} atoms: complement strategy")
        })?;
    }
    within(start, Duration::from_secs(60))
}

fn c5() -> Outcome {
    let mut r = rng(5);
    let mut winning = 0;
    for i in 0..200 {
        use rand::Rng;
        let atoms = r.random_range(1..=3);
        let b = FiniteBooleanAlgebra::new(atoms).map_err(|e| e.to_string())?;
        let sigma = h::random_strategy(atoms, &mut r);
        let fast = h::verify_strategy(&b, &sigma).map_err(|e| e.to_string())?.winning;
        let slow = brute_strategy_wins(atoms, |s| sigma.get(&h::Position::i(s)).expect("total strategy"));
        require(fast == slow, || format!("strategy {i}: certificate {fast}, play graph {slow}"))?;
        winning += fast as usize;
    }
    Ok(format!("200 strategies, {winning} winning"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let inst = zoo::build("spos", &[]).map_err(|e| e.to_string())?;
    let m = &inst.maps[0];
    let scope = m.scope.as_ref().expect("scoped").to_scope();
    let c = check_projection_map(inst.poset(), &m.map, &scope).map_err(|e| e.to_string())?;
    require(c.passed(), || format!("{c:?}"))?;
    let mut caught = 0;
    for mutated in modred::mutations(&m.map, 10, 0) {
        caught += !check_projection_map(inst.poset(), &mutated, &scope)
            .map_err(|e| e.to_string())?
            .passed() as usize;
    }
    require(caught == 10, || format!("{caught} of 10 mutations caught"))?;
    within(start, Duration::from_secs(120)).map(|t| format!("10 of 10 mutations caught, {t}"))
}

fn c7() -> Outcome {
    let reports = zoo::run_checks("tennenbaum", &[("n".into(), "5".into()), ("c".into(), "3".into())]).map_err(|e| e.to_string())?;
    let mut names = Vec::new();
    for alpha in 2..=4 {
        names.push(format!("tennenbaum.pr{alpha}.monotone"));
        names.push(format!("tennenbaum.pr{alpha}.lifting"));
        for route in Route::ALL {
            names.push(format!("tennenbaum.D{alpha}.{}", route.name()));
        }
        names.push(format!("tennenbaum.E{alpha}.dense"));
    }
    all_pass(&reports, &names).map(|_| format!("{} checks", names.len()))
}

fn c8() -> Outcome {
    let l = ladder::Ladder::new(ladder::LadderParams::wide()).map_err(|e| e.to_string())?;
    if let Some((c, alpha, _)) = l.scan(true).map_err(|e| e.to_string())? {
        return Err(format!("witness fails for {} at {alpha}", c.label(8)));
    }
    let control = l.scan(false).map_err(|e| e.to_string())?;
    require(control.is_some(), || "control never fails".into())?;
    Ok(format!(
        "{} conditions scanned, control fails",
        l.conditions().map_err(|e| e.to_string())?.len()
    ))
}

fn c9() -> Outcome {
    let (src, map) = modred::mod_reduction(&modred::ModParams::default()).map_err(|e| e.to_string())?;
    let c = check_projection_map(&src, &map, &ProjectionScope::full()).map_err(|e| e.to_string())?;
    require(c.passed(), || format!("{c:?}")).map(|_| format!("{} conditions", src.size()))
}

fn c10() -> Outcome {
    let reports = zoo::run_checks("amoeba", &[]).map_err(|e| e.to_string())?;
    let names: Vec<String> = ["E0", "E1", "D0", "D1"].iter().map(|f| format!("amoeba.{f}.dense")).collect();
    all_pass(&reports, &names).map(|_| "4 families".into())
}

fn run_binary(args: &[&str]) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_posetforge"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), out.status.code().unwrap_or(-1)))
}

fn c11() -> Outcome {
    let start = Instant::now();
    let (text, code) = run_binary(&["suite", "--level", "exhaustive", "--with-oracle"])?;
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("RESULT ") && l.contains(" FAIL")).collect();
    require(fails.is_empty() && code == 0, || {
        format!("exit {code}, {} failures, first {:?}", fails.len(), fails.first())
    })?;
    let oracle = text.lines().filter(|l| l.starts_with("RESULT oracle.")).count();
    require(oracle > 0, || "no oracle lines".into())?;
    let summary = text.lines().find(|l| l.starts_with("SUMMARY")).unwrap_or("").to_string();
    within(start, Duration::from_secs(900)).map(|t| format!("{oracle} oracle checks, {summary}, {t}"))
}

fn c12() -> Outcome {
    let args = ["suite", "--level", "smoke", "--seed", "42"];
    let (a, _) = run_binary(&args)?;
    let (b, _) = run_binary(&args)?;
    require(!a.is_empty() && a == b, || "reports differ".into()).map(|_| format!("{} bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 12] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        match c() {
            Ok(detail) => println!("criterion {}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
