//! File ingestion, the bundled catalog, verification suites and reports.
//!
//! The `rinehart` binary is a thin wrapper around this module.

mod catalog;
mod format;
mod suites;

use std::fmt::{self, Write as _};
use std::path::Path;
use std::time::Duration;

pub use catalog::{catalog, catalog_entry, CatalogEntry};
pub use format::{parse_algebra, AlgebraFile, LoadError, Location};
pub use suites::{run_suite, run_suites};

use crate::random::CheckConfig;

/// A named group of checks.
///
/// Variants are declared in name order, so sorting suites sorts them by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Axioms,
    Bijections,
    BracketFormula,
    Generator,
    GeneratorSquare,
    Homology,
    Intertwining,
    LinearConnections,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Axioms,
        Suite::Bijections,
        Suite::BracketFormula,
        Suite::Generator,
        Suite::GeneratorSquare,
        Suite::Homology,
        Suite::Intertwining,
        Suite::LinearConnections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Bijections => "bijections",
            Suite::BracketFormula => "bracket-formula",
            Suite::Generator => "generator",
            Suite::GeneratorSquare => "generator-square",
            Suite::Homology => "homology",
            Suite::Intertwining => "intertwining",
            Suite::LinearConnections => "linear-connections",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check behaved as predicted for a case that is known not to satisfy
    /// the property, e.g. `D^2 != 0` for a curved connection.
    ExpectedFail,
    NotApplicable,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedFail => "expected-fail",
            Status::NotApplicable => "n/a",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub status: Status,
    /// One-line human summary.
    pub summary: String,
    /// Deterministic key/value facts, e.g. `("betti", "0,1,1")`.
    pub details: Vec<(String, String)>,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    /// The file path or catalog name the algebra was loaded from.
    pub source: String,
    pub nvars: usize,
    pub rank: usize,
    pub config: CheckConfig,
    pub results: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    /// One-line command reproducing a single suite with the same parameters.
    pub fn rerun_command(&self, suite: Suite) -> String {
        format!(
            "rinehart check {} --suite {} --seed {} --trials {} --degree-bound {}",
            self.source, suite, self.config.seed, self.config.trials, self.config.degree_bound
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Loads `source` as a file path, falling back to the bundled catalog entry
/// of that name when no such file exists.
pub fn load(source: &str) -> Result<AlgebraFile, LoadError> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
            path: source.to_string(),
            source: e,
        })?;
        return parse_algebra(&text, source);
    }
    match catalog_entry(source) {
        Some(entry) => entry.load(),
        None => Err(LoadError::NotFound(source.to_string())),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Renders a report. In the machine format every line is `key=value`;
/// `time.*` lines come last and are the only nondeterministic ones.
pub fn report(rep: &VerificationReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Machine => {
            let _ = writeln!(out, "algebra={}", rep.name);
            let _ = writeln!(out, "source={}", rep.source);
            let _ = writeln!(out, "vars={}", rep.nvars);
            let _ = writeln!(out, "rank={}", rep.rank);
            let _ = writeln!(out, "seed={}", rep.config.seed);
            let _ = writeln!(out, "trials={}", rep.config.trials);
            let _ = writeln!(out, "degree_bound={}", rep.config.degree_bound);
            for r in &rep.results {
                let key = format!("suite.{}", r.suite);
                let _ = writeln!(out, "{key}.status={}", r.status);
                let _ = writeln!(out, "{key}.summary={}", one_line(&r.summary));
                for (k, v) in &r.details {
                    let _ = writeln!(out, "{key}.{k}={}", one_line(v));
                }
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "{key}.witness={}", one_line(w));
                    let _ = writeln!(out, "{key}.rerun={}", rep.rerun_command(r.suite));
                }
            }
            let _ = writeln!(out, "result={}", if rep.passed() { "pass" } else { "fail" });
            for r in &rep.results {
                let _ = writeln!(out, "time.{}.ms={}", r.suite, r.elapsed.as_millis());
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "{} (m = {}, n = {}), seed {}, {} trials, degree bound {}",
                rep.name, rep.nvars, rep.rank, rep.config.seed, rep.config.trials, rep.config.degree_bound
            );
            for r in &rep.results {
                let marker = if r.status == Status::ExpectedFail {
                    " (expected)"
                } else {
                    ""
                };
                let _ = writeln!(
                    out,
                    "  {:<19} {:<14} {}{marker}  [{} ms]",
                    r.suite.name(),
                    r.status.label(),
                    r.summary,
                    r.elapsed.as_millis()
                );
                if let Some(w) = &r.witness {
                    let _ = writeln!(out, "      witness: {}", one_line(w));
                    if r.status == Status::Fail {
                        let _ = writeln!(out, "      rerun:   {}", rep.rerun_command(r.suite));
                    }
                }
            }
            let _ = writeln!(
                out,
                "result: {} ({} passed, {} expected-fail, {} failed, {} n/a)",
                if rep.passed() { "pass" } else { "FAIL" },
                rep.count(Status::Pass),
                rep.count(Status::ExpectedFail),
                rep.count(Status::Fail),
                rep.count(Status::NotApplicable)
            );
        }
    }
    out
}
