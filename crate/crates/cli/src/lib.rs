//! Command-line front end for `posetforge`.
//!
//! [`run`] takes the argument list (without the program name handling that
//! clap does for us) and writes everything to the given sinks, so the
//! binary and the tests share one code path.

pub mod suite;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use posetforge::boolean::{completion, FiniteBooleanAlgebra};
use posetforge::embeddings::{check_projection_map, is_regular_suborder, ProjectionScope, Route};
use posetforge::format::{parse_pmap, parse_poset, parse_sub, parse_sub_list, write_pmap, write_poset, write_sub};
use posetforge::games::{g, h, parse_strategy, show_mask, write_strategy, Player, StrategyFile};
use posetforge::order::FinitePoset;
use posetforge::random::{random_poset, rng};
use posetforge::report::{parse_result_line, render, CheckReport, Status};
use posetforge::zoo;

use suite::{Level, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "posetforge", version, about = "Finite posets, regular suborders, projections and games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether a suborder is regular, by one route or all three.
    CheckRegular {
        #[arg(long)]
        poset: PathBuf,
        /// Member list such as `0,2,5`, or a file of `sub` lines.
        #[arg(long)]
        sub: String,
        #[arg(long, default_value = "all")]
        route: String,
    },
    /// Print the atom count and size of the regular open completion.
    Complete {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Check the three projection clauses for a `pmap v1` file.
    Project {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        pmap: PathBuf,
        /// Target poset; defaults to the source poset.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Solve, simulate or verify strategies for the games.
    Game {
        #[command(subcommand)]
        game: GameCmd,
    },
    /// Build a zoo instance, write it out, or run its bundled checks.
    Zoo {
        name: String,
        /// Instance parameters as `key=value`.
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        bundle: Option<PathBuf>,
        #[arg(long)]
        check: bool,
    },
    /// Generate posets.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
    /// Run a seeded check battery.
    Suite {
        #[arg(long, value_enum)]
        level: Level,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        with_oracle: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the command recorded in a report and confirm every FAIL line
    /// is reproduced.
    Replay {
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GameCmd {
    /// Game ℋ on a powerset algebra.
    H {
        #[arg(long, conflicts_with = "poset")]
        atoms: Option<usize>,
        /// Play on the completion of this poset instead.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[command(flatten)]
        mode: GameMode,
    },
    /// Game 𝒢 on a poset.
    G {
        #[arg(long)]
        poset: PathBuf,
        #[command(flatten)]
        mode: GameMode,
    },
}

#[derive(Args, Debug)]
struct GameMode {
    #[arg(long, group = "mode")]
    solve: bool,
    #[arg(long, group = "mode")]
    simulate: bool,
    #[arg(long, group = "mode")]
    verify_strategy: Option<PathBuf>,
    /// With `--solve`, write the winner's strategy here.
    #[arg(long)]
    strategy_out: Option<PathBuf>,
    /// With `--simulate`, I's strategy file.
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// With `--simulate`, II's strategy file.
    #[arg(long)]
    tau: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    rounds: usize,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Random poset: each pair related with probability `density`.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Outcome = Result<i32, String>;

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_poset(path: &Path) -> Result<FinitePoset, String> {
    parse_poset(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

/// Prints the report and returns 0 iff nothing failed.
fn finish(out: &mut dyn Write, reports: &[CheckReport]) -> Outcome {
    emit(out, &render(reports))?;
    Ok(exit_code(reports))
}

fn exit_code(reports: &[CheckReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.status == Status::Fail))
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Outcome {
    let e = |e: posetforge::Error| e.to_string();
    match cmd {
        Cmd::CheckRegular { poset, sub, route } => {
            let p = load_poset(&poset)?;
            let q = if Path::new(&sub).is_file() {
                parse_sub(&read(Path::new(&sub))?, &p).map_err(e)?
            } else {
                parse_sub_list(&sub, &p).map_err(e)?
            };
            let routes: Vec<Route> = if route == "all" {
                Route::ALL.to_vec()
            } else {
                vec![Route::parse(&route).ok_or(format!("unknown route {route:?}; expected antichain, pseudo, completion or all"))?]
            };
            let reports = routes
                .iter()
                .map(|&r| is_regular_suborder(&p, &q, r).map(|v| v.report(format!("regular.{}", r.name()))))
                .collect::<Result<Vec<_>, _>>()
                .map_err(e)?;
            finish(out, &reports)
        }
        Cmd::Complete { poset } => {
            let ro = completion(&load_poset(&poset)?);
            let size = match ro.size() {
                Some(s) => s.to_string(),
                None => format!("2^{}", ro.atom_count()),
            };
            emit(out, &format!("atoms={} size={size}\n", ro.atom_count()))?;
            Ok(0)
        }
        Cmd::Project { poset, pmap, target } => {
            let p = load_poset(&poset)?;
            let t = match target {
                Some(t) => load_poset(&t)?,
                None => p.clone(),
            };
            let pm = parse_pmap(&read(&pmap)?, p.size(), t).map_err(e)?;
            let check = check_projection_map(&p, &pm, &ProjectionScope::full()).map_err(e)?;
            finish(out, &check.reports("project"))
        }
        Cmd::Game { game } => run_game(game, out),
        Cmd::Zoo {
            name,
            params,
            out: file,
            bundle,
            check,
        } => run_zoo(&name, &params, file, bundle, check, out),
        Cmd::Gen {
            kind:
                GenCmd::Random {
                    n,
                    density,
                    seed,
                    out: file,
                },
        } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(format!("density {density} outside [0, 1]"));
            }
            let p = random_poset(n, density, &mut rng(seed)).map_err(e)?;
            let text = write_poset(&p, None);
            match file {
                Some(f) => write_file(&f, &text)?,
                None => emit(out, &text)?,
            }
            Ok(0)
        }
        Cmd::Suite {
            level,
            max_n,
            seed,
            with_oracle,
            out: file,
        } => {
            let cfg = SuiteConfig::new(level, max_n, seed, with_oracle);
            let reports = suite::run_suite(&cfg);
            let text = suite::report_text(&cfg, &reports);
            if let Some(f) = file {
                write_file(&f, &text)?;
            }
            emit(out, &text)?;
            Ok(exit_code(&reports))
        }
        Cmd::Replay { report } => replay(&read(&report)?, out),
    }
}

fn parse_pairs(params: &[String]) -> Result<Vec<(String, String)>, String> {
    params
        .iter()
        .map(|kv| {
            let kv = kv.trim_start_matches("--");
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or(format!("expected key=value, got {kv:?}"))
        })
        .collect()
}

fn safe_name(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn run_zoo(name: &str, params: &[String], file: Option<PathBuf>, bundle: Option<PathBuf>, check: bool, out: &mut dyn Write) -> Outcome {
    let e = |e: posetforge::Error| e.to_string();
    let pairs = parse_pairs(params)?;
    if check {
        let reports = zoo::run_checks(name, &pairs).map_err(e)?;
        return finish(out, &reports);
    }
    let inst = zoo::build(name, &pairs).map_err(e)?;
    let main = write_poset(inst.poset(), Some(inst.labels()));
    if file.is_none() && bundle.is_none() {
        emit(out, &main)?;
    }
    if let Some(f) = file {
        write_file(&f, &main)?;
    }
    if let Some(dir) = bundle {
        fs::create_dir_all(&dir).map_err(|err| format!("{}: {err}", dir.display()))?;
        let mut index = format!("# zoo {} {}\n", inst.name, inst.params);
        for (i, p) in inst.posets.iter().enumerate() {
            let f = format!("{}.pos", safe_name(&p.name));
            write_file(&dir.join(&f), &write_poset(&p.poset, Some(&p.labels)))?;
            index.push_str(&format!("poset {i} {f}\n"));
        }
        for s in &inst.suborders {
            let f = format!("{}.sub", safe_name(&s.name));
            write_file(&dir.join(&f), &write_sub(&s.item))?;
            index.push_str(&format!("sub {} {f}\n", s.on));
        }
        for d in &inst.dense_sets {
            let f = format!("{}.dense.sub", safe_name(&d.name));
            let members: Vec<String> = d.item.set.ones().map(|x| x.to_string()).collect();
            write_file(&dir.join(&f), &format!("sub {}\n", members.join(" ")))?;
            index.push_str(&format!("dense {} {f}\n", d.on));
        }
        for m in &inst.maps {
            let stem = safe_name(&m.name);
            write_file(&dir.join(format!("{stem}.pmap")), &write_pmap(&m.map))?;
            write_file(
                &dir.join(format!("{stem}.target.pos")),
                &write_poset(m.map.target(), Some(&m.target_labels)),
            )?;
            index.push_str(&format!("pmap {} {stem}.pmap {stem}.target.pos\n", m.on));
        }
        write_file(&dir.join("index.txt"), &index)?;
    }
    Ok(0)
}

fn load_strategy(path: &Path) -> Result<StrategyFile, String> {
    parse_strategy(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_game(game: GameCmd, out: &mut dyn Write) -> Outcome {
    let e = |e: posetforge::Error| e.to_string();
    match game {
        GameCmd::H { atoms, poset, mode } => {
            let atoms = match (atoms, poset) {
                (Some(a), _) => a,
                (None, Some(p)) => completion(&load_poset(&p)?).atom_count(),
                (None, None) => return Err("game h needs --atoms or --poset".into()),
            };
            let b = FiniteBooleanAlgebra::new(atoms).map_err(e)?;
            if mode.solve {
                let sol = h::solve(&b).map_err(e)?;
                let rounds = sol.rank[0].map_or("none".to_string(), |r| r.to_string());
                emit(out, &format!("winner={} rounds={rounds}\n", sol.winner))?;
                if let Some(f) = mode.strategy_out {
                    write_file(
                        &f,
                        &write_strategy(&StrategyFile::H {
                            atoms,
                            strategy: sol.strategy,
                        }),
                    )?;
                }
                Ok(0)
            } else if mode.simulate {
                let sigma = match &mode.sigma {
                    Some(f) => h_strategy(load_strategy(f)?, atoms)?,
                    None => h::complement_strategy(atoms),
                };
                let tau = match &mode.tau {
                    Some(f) => h_strategy(load_strategy(f)?, atoms)?,
                    None => h::least_atom_strategy(atoms),
                };
                let trace = h::simulate(&b, &sigma, &tau, mode.rounds).map_err(e)?;
                let mut text = String::new();
                for (i, r) in trace.rounds.iter().enumerate() {
                    text.push_str(&format!(
                        "round {i} a={} b={} sum={}\n",
                        show_mask(r.a),
                        show_mask(r.b),
                        show_mask(r.sum)
                    ));
                }
                let winner = trace.winner().map_or("undecided".to_string(), |p| p.to_string());
                text.push_str(&format!("outcome {:?} winner={winner}\n", trace.outcome));
                emit(out, &text)?;
                Ok(0)
            } else if let Some(f) = mode.verify_strategy {
                let sigma = h_strategy(load_strategy(&f)?, atoms)?;
                let v = h::verify_strategy(&b, &sigma).map_err(e)?;
                let mut text = String::new();
                for c in &v.certificates {
                    text.push_str(&format!("# {c}\n"));
                }
                emit(out, &text)?;
                finish(out, &[v.report("game.h.verify")])
            } else {
                Err("choose one of --solve, --simulate, --verify-strategy".into())
            }
        }
        GameCmd::G { poset, mode } => {
            let p = load_poset(&poset)?;
            let n = p.size();
            if mode.solve {
                let sol = g::solve(&p).map_err(e)?;
                emit(out, &format!("winner={}\n", sol.winner))?;
                if let Some(f) = mode.strategy_out {
                    write_file(
                        &f,
                        &write_strategy(&StrategyFile::G {
                            size: n,
                            strategy: sol.strategy,
                        }),
                    )?;
                }
                Ok(0)
            } else if mode.simulate {
                let sol = g::solve(&p).map_err(e)?;
                let pick = |f: &Option<PathBuf>, owner: Player| -> Result<g::Strategy, String> {
                    match f {
                        Some(f) => g_strategy(load_strategy(f)?, n),
                        None if sol.winner == owner => Ok(sol.strategy.clone()),
                        None => Ok(g::constant_strategy(owner, n, 0)),
                    }
                };
                let sigma = pick(&mode.sigma, Player::I)?;
                let tau = pick(&mode.tau, Player::II)?;
                let trace = g::simulate(&p, &sigma, &tau, mode.rounds).map_err(e)?;
                let mut text = String::new();
                for (i, (a, b)) in trace.rounds.iter().enumerate() {
                    text.push_str(&format!("round {i} a={a} b={b}\n"));
                }
                let winner = trace.winner().map_or("undecided".to_string(), |p| p.to_string());
                text.push_str(&format!(
                    "final={} regular={} winner={winner}\n",
                    show_mask(trace.final_set),
                    trace.regular
                ));
                emit(out, &text)?;
                Ok(0)
            } else if let Some(f) = mode.verify_strategy {
                let st = g_strategy(load_strategy(&f)?, n)?;
                let v = g::verify_strategy(&p, &st).map_err(e)?;
                finish(out, &[v.report("game.g.verify")])
            } else {
                Err("choose one of --solve, --simulate, --verify-strategy".into())
            }
        }
    }
}

fn h_strategy(file: StrategyFile, atoms: usize) -> Result<h::Strategy, String> {
    match file {
        StrategyFile::H { atoms: a, strategy } if a == atoms => Ok(strategy),
        StrategyFile::H { atoms: a, .. } => Err(format!("strategy is for {a} atoms, the algebra has {atoms}")),
        StrategyFile::G { .. } => Err("expected a strategy for game h".into()),
    }
}

fn g_strategy(file: StrategyFile, n: usize) -> Result<g::Strategy, String> {
    match file {
        StrategyFile::G { size, strategy } if size == n => Ok(strategy),
        StrategyFile::G { size, .. } => Err(format!("strategy is for {size} elements, the poset has {n}")),
        StrategyFile::H { .. } => Err("expected a strategy for game g".into()),
    }
}

/// Re-runs the command in the report header and compares FAIL lines.
fn replay(report: &str, out: &mut dyn Write) -> Outcome {
    let header = report
        .lines()
        .find_map(|l| l.strip_prefix("# posetforge "))
        .ok_or("report has no `# posetforge <args>` header")?;
    let args: Vec<&str> = header.split_whitespace().collect();
    if matches!(args.first(), Some(&"replay") | None) {
        return Err(format!("cannot replay `{header}`"));
    }
    let recorded: Vec<_> = report.lines().filter_map(parse_result_line).collect();
    let mut buf = Vec::new();
    let mut sink = Vec::new();
    run(std::iter::once("posetforge").chain(args.iter().copied()), &mut buf, &mut sink);
    let fresh: Vec<_> = String::from_utf8_lossy(&buf).lines().filter_map(parse_result_line).collect();
    let mut reports = Vec::new();
    for r in recorded.iter().filter(|r| r.status == Status::Fail) {
        let name = format!("replay.{}", r.name);
        let again = fresh.iter().find(|f| f.name == r.name);
        reports.push(match again {
            Some(f) if f.status == Status::Fail && f.witness == r.witness => CheckReport::pass(name),
            Some(f) => CheckReport::fail(name, format!("now={};witness={}", f.status, f.witness.clone().unwrap_or_default())),
            None => CheckReport::fail(name, "check_not_run"),
        });
    }
    reports.push(CheckReport::from_failure(
        "replay.line_count",
        (fresh.len() != recorded.len()).then(|| format!("recorded={};now={}", recorded.len(), fresh.len())),
    ));
    finish(out, &reports)
}
