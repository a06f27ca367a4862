//! Named check suites comparing the enumerator, the orientation counter and
//! the closed forms on small instances.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{count_minimal, count_tilings, count_variable};
use crate::error::{Error, Result};
use crate::formulas::{
    a_sequence, aztec_count, rect_strip_count, stair_count, stanley_fib_count, stanley_minimal_count,
};
use crate::region::{build_aztec, build_rectangle, build_stair, Region};
use crate::sheffield::{verify_bijection, verify_growth_bounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Formulas,
    Bijection,
    Growth,
    Stanley,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formulas" => Ok(Suite::Formulas),
            "bijection" => Ok(Suite::Bijection),
            "growth" => Ok(Suite::Growth),
            "stanley" => Ok(Suite::Stanley),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A published closed form or table value.
    Published,
    /// An independent computation.
    Derived,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub provenance: Provenance,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    fn new(suite: Suite, checks: Vec<CheckResult>) -> Self {
        let tally = |s| checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, skipped) = (tally(Status::Pass), tally(Status::Fail), tally(Status::Skipped));
        Report { suite, checks, passed, failed, skipped }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub free_edge_limit: usize,
    /// Replaces the default growth rectangles.
    pub growth_region: Option<(Region, usize)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { free_edge_limit: 64, growth_region: None }
    }
}

/// Runs `actual`, compares its rendering with `expected`. A resource limit
/// skips the check; any other error fails it.
fn check(
    name: impl Into<String>,
    expected: impl ToString,
    provenance: Provenance,
    actual: impl FnOnce() -> Result<String>,
) -> CheckResult {
    let expected = expected.to_string();
    let (actual, status) = match actual() {
        Ok(a) => {
            let status = if a == expected { Status::Pass } else { Status::Fail };
            (a, status)
        }
        Err(e @ Error::ResourceLimit(_)) => (e.to_string(), Status::Skipped),
        Err(e) => (format!("error: {e}"), Status::Fail),
    };
    CheckResult { name: name.into(), expected, provenance, actual, status }
}

/// Regions on which tilings and admissible orientations are compared,
/// with the ribbon length to use.
pub fn bijection_battery() -> Vec<(String, Region, usize)> {
    let mut out = Vec::new();
    for (rows, cols, n) in [
        (2, 2, 2),
        (2, 3, 2),
        (2, 6, 2),
        (3, 3, 3),
        (3, 4, 3),
        (3, 6, 3),
        (4, 4, 2),
        (4, 4, 4),
        (4, 5, 4),
        (5, 5, 5),
        (3, 9, 3),
    ] {
        out.push((format!("rect {rows}x{cols}/n={n}"), build_rectangle(rows, cols).expect("rectangle"), n));
    }
    for (size, n, k) in [(1, 2, 0), (2, 2, 0), (3, 2, 0), (2, 3, 1), (3, 3, 0), (3, 4, 2)] {
        out.push((format!("aztec N={size},n={n},k={k}"), build_aztec(size, n, k).expect("aztec"), n));
    }
    for (rows, n) in [(4, 3), (6, 3), (5, 5), (7, 5)] {
        out.push((format!("stair M={rows},n={n}"), build_stair(rows, n).expect("stair"), n));
    }
    for (grid, n) in IRREGULAR {
        out.push((format!("grid {:?}/n={n}", grid), Region::parse_grid(grid).expect("grid"), *n));
    }
    out
}

/// Hand-drawn skew shapes: every row is an interval, and both ends of the
/// interval move weakly right from each row to the one above it.
pub const IRREGULAR: &[(&str, usize)] = &[
    ("..###\n.####\n####.\n###..", 2),
    (".##.\n####\n####\n.##.", 2),
    ("..####\n..####\n.####.\n####..", 2),
    ("..####\n.#####\n###...", 3),
    ("...###\n..####\n######\n####..\n###...", 2),
];

fn formulas_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 2..=5 {
        for width in 1..=n + 1 {
            if width == n + 1 && n > 4 {
                continue;
            }
            let expected = rect_strip_count(n, width).expect("strip width in range");
            out.push(check(format!("{n}x{width}/n={n}: expect {expected}"), &expected, Provenance::Published, || {
                Ok(count_tilings(&build_rectangle(n, width)?, n)?.to_string())
            }));
        }
    }
    for (n, expected) in [(2, 5u32), (3, 61), (4, 1379)] {
        out.push(check(format!("{n}x{}/n={n}: expect {expected}", 2 * n), expected, Provenance::Published, || {
            Ok(count_tilings(&build_rectangle(n, 2 * n)?, n)?.to_string())
        }));
        out.push(check(format!("recurrence a_{n}: expect {expected}"), expected, Provenance::Published, || {
            Ok(a_sequence(n)?.to_string())
        }));
    }
    for size in 1..=3 {
        for n in 2..=4 {
            for k in 0..=n - 2 {
                let expected = aztec_count(size);
                out.push(check(
                    format!("aztec N={size},n={n},k={k}: expect {expected}"),
                    &expected,
                    Provenance::Published,
                    || Ok(count_tilings(&build_aztec(size, n, k)?, n)?.to_string()),
                ));
            }
        }
    }
    for n in 2..=7 {
        for rows in 1..=8 {
            out.push(check(
                format!("stair M={rows},n={n}"),
                stair_count(rows, n).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string()),
                if n % 2 == 1 { Provenance::Published } else { Provenance::Derived },
                || Ok(count_tilings(&build_stair(rows, n)?, n)?.to_string()),
            ));
        }
    }
    out
}

fn bijection_suite(opts: &VerifyOptions) -> Vec<CheckResult> {
    bijection_battery()
        .into_iter()
        .map(|(name, region, n)| {
            check(format!("{name}: tilings = orientations"), "holds", Provenance::Published, || {
                let report = verify_bijection(&region, n, opts.free_edge_limit)?;
                Ok(if report.holds() {
                    "holds".to_string()
                } else {
                    format!(
                        "{} tilings, {} orientations: {}",
                        report.tilings,
                        report.orientations,
                        report.first_offense.as_deref().unwrap_or("forced directions vary")
                    )
                })
            })
        })
        .collect()
}

fn growth_suite(opts: &VerifyOptions) -> Vec<CheckResult> {
    let regions = match &opts.growth_region {
        Some((r, n)) => vec![(r.clone(), *n)],
        None => [(3, 6, 3), (3, 9, 3), (4, 8, 4)]
            .into_iter()
            .map(|(rows, cols, n)| (build_rectangle(rows, cols).expect("rectangle"), n))
            .collect(),
    };
    regions
        .into_iter()
        .map(|(region, n)| {
            let (rows, cols) = region.as_rectangle().unwrap_or((0, 0));
            check(format!("{rows}x{cols}/n={n}: growth bounds"), "within bounds", Provenance::Derived, || {
                let report = verify_growth_bounds(&region, n, opts.free_edge_limit)?;
                Ok(match report.rows.iter().find(|r| !(r.binomial_ok && r.exponential_ok)) {
                    None => "within bounds".to_string(),
                    Some(r) => format!("level {} violates: g = {}", r.level, r.growth),
                })
            })
        })
        .collect()
}

fn stanley_suite() -> Vec<CheckResult> {
    let mut sizes: Vec<(usize, usize)> = (1..=4).flat_map(|m| (m..=4).map(move |n| (m, n))).collect();
    sizes.push((2, 5));
    let mut out = Vec::new();
    for (m, n) in sizes {
        let region = build_rectangle(m, n).expect("rectangle");
        let expected = stanley_fib_count(m, n);
        out.push(check(format!("{m}x{n} any length: expect {expected}"), &expected, Provenance::Published, || {
            Ok(count_variable(&region).to_string())
        }));
        let (tiles, ways) = stanley_minimal_count(m, n);
        out.push(check(
            format!("{m}x{n} minimal tilings"),
            format!("{tiles} tiles, {ways} ways"),
            Provenance::Published,
            || {
                let (t, w) = count_minimal(&region);
                Ok(format!("{t} tiles, {w} ways"))
            },
        ));
    }
    out
}

/// Runs one suite, or all of them.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    let checks = match suite {
        Suite::Formulas => formulas_suite(),
        Suite::Bijection => bijection_suite(opts),
        Suite::Growth => growth_suite(opts),
        Suite::Stanley => stanley_suite(),
        Suite::All => {
            let mut all = formulas_suite();
            all.extend(bijection_suite(opts));
            all.extend(growth_suite(opts));
            all.extend(stanley_suite());
            all
        }
    };
    Report::new(suite, checks)
}
