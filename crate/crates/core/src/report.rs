//! Verification reports: named checks with a three-valued status.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Check { name: name.into(), status, lhs: lhs.into(), rhs: rhs.into() }
    }

    /// Pass iff `ok`, recording both rendered sides.
    pub fn compare(name: impl Into<String>, ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, lhs, rhs)
    }

    /// Turns an error raised while evaluating a check into report content.
    /// Resource limits make a check inconclusive; anything else is a failure.
    pub fn from_error(name: impl Into<String>, err: &Error) -> Self {
        let status = match err {
            Error::DegreeCap { .. } | Error::FuelExhausted(_) => Status::Inconclusive,
            _ => Status::Fail,
        };
        Check::new(name, status, format!("error: {err}"), "")
    }

    /// Runs `f`, mapping errors through [`Check::from_error`].
    pub fn run(name: impl Into<String>, f: impl FnOnce() -> Result<Check>) -> Self {
        let name = name.into();
        match f() {
            Ok(mut c) => {
                if c.name.is_empty() {
                    c.name = name;
                }
                c
            }
            Err(e) => Check::from_error(name, &e),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    #[serde(rename = "totalMillis")]
    pub total_millis: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub timing: Timing,
}

impl Report {
    pub fn new(suite: impl Into<String>, n: usize, checks: Vec<Check>, total_millis: u128) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report { suite: suite.into(), n, checks, summary, timing: Timing { total_millis } }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_matches_tallies() {
        let checks = vec![
            Check::compare("a", true, "1", "1"),
            Check::compare("b", false, "1", "0"),
            Check::from_error("c", &Error::DegreeCap { cap: 3, len: 4 }),
            Check::run("d", || Err(Error::Domain("x".into()))),
        ];
        let r = Report::new("sphere", 2, checks, 0);
        assert_eq!(r.summary, Summary { pass: 1, fail: 2, inconclusive: 1 });
        assert!(!r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["checks"][2]["status"], "inconclusive");
        assert!(json["timing"]["totalMillis"].is_number());
    }
}
