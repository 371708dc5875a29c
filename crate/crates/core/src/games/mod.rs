//! Solvers for two finite games.
//!
//! * [`h`]: I plays a nonzero `a` in a finite powerset algebra, II answers
//!   with `0 < b ≤ a`; I wins iff the join of II's answers reaches `1`.
//! * [`g`]: both players pick elements of a finite poset; II wins iff the
//!   set of picked elements, once it stops growing, is a regular suborder.
//!
//! Strategies are positional tables and can be stored in the `strat v1`
//! text format:
//!
//! ```text
//! strat v1
//! game h 2
//! owner I
//! at s{} play {0,1}
//! ```

pub mod g;
pub mod h;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{input_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

/// A move table for one player, keyed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionalStrategy<K: Ord, M> {
    pub owner: Player,
    pub choice: BTreeMap<K, M>,
}

impl<K: Ord, M: Copy> PositionalStrategy<K, M> {
    pub fn new(owner: Player) -> Self {
        PositionalStrategy {
            owner,
            choice: BTreeMap::new(),
        }
    }

    pub fn get(&self, k: &K) -> Option<M> {
        self.choice.get(k).copied()
    }
}

/// Renders a bitmask as `{0,2}`.
pub fn show_mask(m: u64) -> String {
    let xs: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", xs.join(","))
}

/// Parses a `{0,2}` set at the start of `s` into a mask below `bound`,
/// returning the mask and the rest of the string.
fn take_mask(s: &str, bound: usize, line: usize) -> Result<(u64, &str)> {
    let body = s.strip_prefix('{').ok_or_else(|| Error::Input {
        line,
        msg: format!("expected `{{` in {s:?}"),
    })?;
    let end = body.find('}').ok_or_else(|| Error::Input {
        line,
        msg: "unterminated set".into(),
    })?;
    let mut m = 0u64;
    for w in body[..end].split(',').filter(|w| !w.trim().is_empty()) {
        let i: usize = w.trim().parse().map_err(|_| Error::Input {
            line,
            msg: format!("bad set member {w:?}"),
        })?;
        if i >= bound {
            return input_err(line, format!("set member {i} out of range"));
        }
        m |= 1 << i;
    }
    Ok((m, &body[end + 1..]))
}

fn parse_mask(s: &str, bound: usize, line: usize) -> Result<u64> {
    match take_mask(s, bound, line)? {
        (m, "") => Ok(m),
        (_, rest) => input_err(line, format!("trailing text {rest:?}")),
    }
}

/// The contents of a `strat v1` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyFile {
    H { atoms: usize, strategy: h::Strategy },
    G { size: usize, strategy: g::Strategy },
}

pub fn parse_strategy(text: &str) -> Result<StrategyFile> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    });
    match lines.next() {
        Some((_, "strat v1")) => {}
        Some((line, l)) => return input_err(line, format!("expected `strat v1`, found `{l}`")),
        None => return input_err(1, "empty strategy file"),
    }
    let (line, game) = lines.next().ok_or(Error::Input {
        line: 2,
        msg: "missing `game` line".into(),
    })?;
    let words: Vec<&str> = game.split_whitespace().collect();
    let (kind, n) = match words.as_slice() {
        ["game", kind @ ("h" | "g"), n] => (
            *kind,
            n.parse::<usize>().map_err(|_| Error::Input {
                line,
                msg: format!("bad size {n:?}"),
            })?,
        ),
        _ => return input_err(line, "expected `game h <atoms>` or `game g <elements>`"),
    };
    if n == 0 || n > 63 {
        return input_err(line, format!("game size {n} out of range"));
    }
    let (line, owner) = lines.next().ok_or(Error::Input {
        line: line + 1,
        msg: "missing `owner` line".into(),
    })?;
    let owner = match owner.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["owner", "I"] => Player::I,
        ["owner", "II"] => Player::II,
        _ => return input_err(line, "expected `owner I` or `owner II`"),
    };
    let mut entries = Vec::new();
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["at", key, "play", mv] => entries.push((line, *key, *mv)),
            _ => return input_err(line, format!("expected `at <key> play <move>`, found `{l}`")),
        }
    }
    if kind == "h" {
        let mut strategy = h::Strategy::new(owner);
        for (line, key, mv) in entries {
            let rest = key.strip_prefix('s').ok_or(Error::Input {
                line,
                msg: "ℋ keys start with `s`".into(),
            })?;
            let (sum, rest) = take_mask(rest, n, line)?;
            let offered = match (owner, rest.strip_prefix('a')) {
                (Player::I, None) if rest.is_empty() => None,
                (Player::II, Some(a)) => Some(parse_mask(a, n, line)?),
                _ => return input_err(line, format!("key {key:?} does not fit owner {owner}")),
            };
            let mv = parse_mask(mv, n, line)?;
            strategy.choice.insert(h::Position { sum, offered }, mv);
        }
        Ok(StrategyFile::H { atoms: n, strategy })
    } else {
        let mut strategy = g::Strategy::new(owner);
        for (line, key, mv) in entries {
            let rest = key.strip_prefix('S').ok_or(Error::Input {
                line,
                msg: "𝒢 keys start with `S`".into(),
            })?;
            let (set, rest) = take_mask(rest, n, line)?;
            let last = match (owner, rest.strip_prefix('m')) {
                (Player::I, None) if rest.is_empty() => None,
                (Player::II, Some(m)) => Some(parse_index(m, n, line)?),
                _ => return input_err(line, format!("key {key:?} does not fit owner {owner}")),
            };
            let mv = parse_index(mv, n, line)?;
            strategy.choice.insert(g::Position { set, last }, mv);
        }
        Ok(StrategyFile::G { size: n, strategy })
    }
}

fn parse_index(s: &str, bound: usize, line: usize) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(i) if i < bound => Ok(i),
        _ => input_err(line, format!("bad element {s:?}")),
    }
}

pub fn write_strategy(file: &StrategyFile) -> String {
    let mut out = String::from("strat v1\n");
    match file {
        StrategyFile::H { atoms, strategy } => {
            out.push_str(&format!("game h {atoms}\nowner {}\n", strategy.owner));
            for (k, m) in &strategy.choice {
                out.push_str(&format!("at {k} play {}\n", show_mask(*m)));
            }
        }
        StrategyFile::G { size, strategy } => {
            out.push_str(&format!("game g {size}\nowner {}\n", strategy.owner));
            for (k, m) in &strategy.choice {
                out.push_str(&format!("at {k} play {m}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        assert_eq!(show_mask(0b101), "{0,2}");
        assert_eq!(show_mask(0), "{}");
        assert_eq!(parse_mask("{0,2}", 3, 1).unwrap(), 0b101);
        assert_eq!(parse_mask("{}", 3, 1).unwrap(), 0);
        assert!(parse_mask("{3}", 3, 1).is_err());
    }

    #[test]
    fn strategy_files_round_trip() {
        let text = "strat v1\ngame h 2\nowner I\nat s{} play {0,1}\nat s{0} play {1}\n";
        let f = parse_strategy(text).unwrap();
        assert_eq!(write_strategy(&f), text);

        let text = "strat v1\ngame h 2\nowner II\nat s{0}a{1} play {1}\n";
        assert_eq!(write_strategy(&parse_strategy(text).unwrap()), text);

        let text = "strat v1\ngame g 3\nowner II\nat S{}m2 play 1\nat S{0}m2 play 0\n";
        assert_eq!(write_strategy(&parse_strategy(text).unwrap()), text);

        assert!(parse_strategy("strat v1\ngame h 2\nowner I\nat s{0}a{1} play {1}\n").is_err());
        assert!(matches!(parse_strategy("strat v2\n"), Err(Error::Input { line: 1, .. })));
    }
}
