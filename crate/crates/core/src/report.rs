//! Check outcomes and the line-oriented report format.

use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One named verdict. A failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
    pub timing_ms: u64,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Pass,
            witness: None,
            timing_ms: 0,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            timing_ms: 0,
        }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Skip,
            witness: Some(reason.into()),
            timing_ms: 0,
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with its text as witness.
    pub fn from_failure(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_timing(mut self, ms: u64) -> Self {
        self.timing_ms = ms;
        self
    }

    /// `RESULT <name> <status> [witness=<token>]`.
    pub fn line(&self) -> String {
        match (&self.witness, self.status) {
            (Some(w), Status::Fail | Status::Skip) => {
                format!("RESULT {} {} witness={}", token(&self.name), self.status, token(w))
            }
            _ => format!("RESULT {} {}", token(&self.name), self.status),
        }
    }
}

/// Runs `f` and records its wall-clock time on the returned report.
pub fn timed(f: impl FnOnce() -> CheckReport) -> CheckReport {
    let start = Instant::now();
    let r = f();
    let ms = start.elapsed().as_millis() as u64;
    r.with_timing(ms)
}

/// Whitespace-free rendering of a witness.
pub fn token(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Skip => s.skip += 1,
        }
    }
    s
}

/// Report lines in canonical (name-sorted) order followed by the summary.
pub fn render(reports: &[CheckReport]) -> String {
    let mut sorted: Vec<&CheckReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name).then(a.status.cmp(&b.status)));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&r.line());
        out.push('\n');
    }
    let s = summarize(reports);
    out.push_str(&format!("SUMMARY pass={} fail={} skip={}\n", s.pass, s.fail, s.skip));
    out
}

/// A parsed `RESULT` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultLine {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

pub fn parse_result_line(line: &str) -> Option<ResultLine> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "RESULT" {
        return None;
    }
    let name = parts.next()?.to_string();
    let status = match parts.next()? {
        "PASS" => Status::Pass,
        "FAIL" => Status::Fail,
        "SKIP" => Status::Skip,
        _ => return None,
    };
    let witness = parts.next().and_then(|w| w.strip_prefix("witness=")).map(str::to_string);
    Some(ResultLine { name, status, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_summary() {
        let rs = vec![
            CheckReport::fail("b.check", "element 3"),
            CheckReport::pass("a.check"),
            CheckReport::skip("c.check", "too big"),
        ];
        assert_eq!(
            render(&rs),
            "RESULT a.check PASS\nRESULT b.check FAIL witness=element_3\n\
             RESULT c.check SKIP witness=too_big\nSUMMARY pass=1 fail=1 skip=1\n"
        );
    }

    #[test]
    fn result_lines_parse_back() {
        let r = CheckReport::fail("x.y", "a b");
        let parsed = parse_result_line(&r.line()).unwrap();
        assert_eq!(parsed.name, "x.y");
        assert_eq!(parsed.status, Status::Fail);
        assert_eq!(parsed.witness.as_deref(), Some("a_b"));
        assert!(parse_result_line("SUMMARY pass=1").is_none());
    }
}
