//! Text formats for posets (`poset v1`), suborders (`sub` lines) and
//! projection maps (`pmap v1`).
//!
//! ```text
//! poset v1
//! n 3
//! le 2 0
//! le 2 1   # 2 lies below both
//! ```

use crate::embeddings::ProjectionMap;
use crate::error::{input_err, Error, Result};
use crate::order::{FinitePoset, Suborder};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn index(line: usize, w: &str) -> Result<usize> {
    w.parse().map_err(|_| Error::Input {
        line,
        msg: format!("expected an index, found {w:?}"),
    })
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, kind: &str) -> Result<()> {
    match lines.next() {
        Some((_, w)) if w == [kind, "v1"] => Ok(()),
        Some((line, w)) => input_err(line, format!("expected `{kind} v1`, found `{}`", w.join(" "))),
        None => input_err(1, format!("empty input, expected `{kind} v1`")),
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "poset")?;
    let n = match lines.next() {
        Some((line, w)) if w.len() == 2 && w[0] == "n" => index(line, w[1])?,
        Some((line, _)) => return input_err(line, "expected `n <N>`"),
        None => return input_err(2, "missing `n <N>`"),
    };
    let mut rel = Vec::new();
    for (line, w) in lines {
        match w.as_slice() {
            ["le", i, j] => {
                let (i, j) = (index(line, i)?, index(line, j)?);
                if i >= n || j >= n {
                    return input_err(line, format!("index out of range for {n} elements"));
                }
                rel.push((i, j));
            }
            _ => return input_err(line, format!("unrecognised line `{}`", w.join(" "))),
        }
    }
    FinitePoset::new(n, &rel)
}

/// Writes the cover relation; `labels`, when given, become trailing comments.
pub fn write_poset(p: &FinitePoset, labels: Option<&[String]>) -> String {
    let mut out = format!("poset v1\nn {}\n", p.size());
    if let Some(labels) = labels {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("# {i} {l}\n"));
        }
    }
    for (lo, hi) in p.covers() {
        out.push_str(&format!("le {lo} {hi}\n"));
    }
    out
}

/// Members listed on `sub` lines (several lines are concatenated).
pub fn parse_sub(text: &str, parent: &FinitePoset) -> Result<Suborder> {
    let mut members = Vec::new();
    for (line, w) in content_lines(text) {
        if w[0] != "sub" {
            return input_err(line, "expected `sub <i> <j> ...`");
        }
        for x in &w[1..] {
            members.push(index(line, x)?);
        }
    }
    if members.is_empty() {
        return input_err(1, "suborder lists no members");
    }
    Suborder::new(parent, members)
}

/// A comma- or whitespace-separated member list, as given on the command line.
pub fn parse_sub_list(list: &str, parent: &FinitePoset) -> Result<Suborder> {
    let members = list
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| index(1, w))
        .collect::<Result<Vec<_>>>()?;
    if members.is_empty() {
        return input_err(1, "suborder lists no members");
    }
    Suborder::new(parent, members)
}

pub fn write_sub(q: &Suborder) -> String {
    let ms: Vec<String> = q.members().iter().map(|m| m.to_string()).collect();
    format!("sub {}\n", ms.join(" "))
}

pub fn parse_pmap(text: &str, source_size: usize, target: FinitePoset) -> Result<ProjectionMap> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "pmap")?;
    let mut pairs = Vec::new();
    for (line, w) in lines {
        match w.as_slice() {
            ["map", s, t] => {
                let (s, t) = (index(line, s)?, index(line, t)?);
                if s >= source_size {
                    return input_err(line, format!("source index {s} out of range"));
                }
                if t >= target.size() {
                    return input_err(line, format!("target index {t} out of range"));
                }
                pairs.push((s, t));
            }
            _ => return input_err(line, format!("unrecognised line `{}`", w.join(" "))),
        }
    }
    ProjectionMap::new(source_size, pairs, target)
}

pub fn write_pmap(pm: &ProjectionMap) -> String {
    let mut out = String::from("pmap v1\n");
    for (s, t) in pm.pairs() {
        out.push_str(&format!("map {s} {t}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let p = parse_poset("poset v1\nn 3\nle 2 0 # comment\n\nle 2 1\n").unwrap();
        assert!(p.leq(2, 0) && p.leq(2, 1) && !p.leq(0, 1));
        let text = write_poset(&p, Some(&["a".into(), "b".into(), "c".into()]));
        assert_eq!(parse_poset(&text).unwrap(), p);
    }

    #[test]
    fn poset_errors_carry_lines() {
        assert!(matches!(parse_poset("poset v2\nn 1\n"), Err(Error::Input { line: 1, .. })));
        assert!(matches!(parse_poset("poset v1\nn 2\nle 0 5\n"), Err(Error::Input { line: 3, .. })));
        assert!(matches!(parse_poset("poset v1\nn 2\nle 0 1\nle 1 0\n"), Err(Error::Cycle(_))));
        assert!(matches!(parse_poset("poset v1\nn 2\nge 0 1\n"), Err(Error::Input { line: 3, .. })));
    }

    #[test]
    fn subs_and_maps() {
        let p = FinitePoset::chain(4).unwrap();
        let q = parse_sub("sub 0 2\nsub 3\n", &p).unwrap();
        assert_eq!(q.members(), &[0, 2, 3]);
        assert_eq!(parse_sub_list("0,2, 3", &p).unwrap(), q);
        assert_eq!(parse_sub(&write_sub(&q), &p).unwrap(), q);
        assert!(parse_sub_list("", &p).is_err());

        let t = FinitePoset::chain(2).unwrap();
        let pm = parse_pmap("pmap v1\nmap 0 0\nmap 3 1\n", 4, t.clone()).unwrap();
        assert_eq!(pm.domain(), vec![0, 3]);
        assert_eq!(parse_pmap(&write_pmap(&pm), 4, t.clone()).unwrap(), pm);
        assert!(parse_pmap("pmap v1\nmap 0 0\nmap 0 1\n", 4, t).is_err());
    }
}
