//! Named verification suites over the kar2 engine with stable JSON reports.

mod suites;

use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use kar2_core::{Error, Rational, Result};

pub use suites::{s9_obstruction, small_multisets, S9_WORD, S9_WORD_RESTORED, SUITES};

/// Version tag of the JSON report layout.
pub const SCHEMA: &str = "kar2soergel.report/1";

#[derive(Clone, Debug, Args, Serialize)]
pub struct Config {
    /// Symmetric-group rank for the Coxeter suites.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Deformation parameters as comma-separated rationals, e.g. "1,-1" or "1/2,0".
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Grassmannian label; all k when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    /// Maximal number of conjugation layers in rainbow searches.
    #[arg(long, default_value_t = 3)]
    pub max_rainbow: usize,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Extra degrees covered by the hom-space cross-checks.
    #[arg(long, default_value_t = 4)]
    pub degree_slack: usize,
    /// Include the long-running checks.
    #[arg(long)]
    pub extended: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { n: 4, sigma: None, k: None, max_rainbow: 3, seed: 0, degree_slack: 4, extended: false }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if !(2..=6).contains(&self.n) {
            return Err(Error::Invalid(format!("--n must lie in 2..=6, got {}", self.n)));
        }
        let sigma = self.sigma_values()?;
        if let Some(k) = self.k {
            if k > sigma.len() {
                return Err(Error::Invalid(format!("--k {k} exceeds |sigma| = {}", sigma.len())));
            }
        }
        if sigma.len() > 8 {
            return Err(Error::Invalid("at most 8 deformation parameters are supported".into()));
        }
        Ok(())
    }

    /// Parsed deformation parameters; defaults to {1, −1}.
    pub fn sigma_values(&self) -> Result<Vec<Rational>> {
        match &self.sigma {
            None => Ok(vec![Rational::from_int(1), Rational::from_int(-1)]),
            Some(s) if s.trim().is_empty() => Ok(Vec::new()),
            Some(s) => s.split(',').map(|t| t.trim().parse::<Rational>()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: serde_json::Value,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub config: Config,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

type Outcome = Result<(bool, serde_json::Value)>;

/// A named check, run lazily.
pub(crate) struct Job {
    name: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Job {
    pub(crate) fn new(name: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Job { name: name.into(), run: Box::new(run) }
    }

    pub(crate) fn skipped(name: impl Into<String>, why: &str) -> Self {
        let why = why.to_string();
        Job::new(name, move || Ok((true, serde_json::json!({ "skipped": why.clone() }))))
    }

    fn execute(&self) -> Check {
        let start = Instant::now();
        let out = (self.run)();
        let millis = start.elapsed().as_millis();
        match out {
            Ok((ok, detail)) => {
                let status = if detail.get("skipped").is_some() {
                    Status::Skip
                } else if ok {
                    Status::Pass
                } else {
                    Status::Fail
                };
                Check { name: self.name.clone(), status, detail, millis }
            }
            Err(e) => Check {
                name: self.name.clone(),
                status: Status::Error,
                detail: serde_json::json!({ "error": e.to_string() }),
                millis,
            },
        }
    }
}

/// Runs one suite (or `all`). Checks run concurrently; report order is fixed.
pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport> {
    cfg.validate()?;
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::Invalid(format!("unknown suite '{name}'; expected one of {SUITES:?} or all")));
    };
    let mut jobs = Vec::new();
    for s in &names {
        for mut j in suites::jobs(s, cfg)? {
            if names.len() > 1 {
                j.name = format!("{s}/{}", j.name);
            }
            jobs.push(j);
        }
    }
    let checks: Vec<Check> = jobs.par_iter().map(Job::execute).collect();
    let passed = checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skip));
    Ok(SuiteReport { schema: SCHEMA, suite: name.to_string(), config: cfg.clone(), passed, checks })
}

pub fn emit_report(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for c in &r.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Error => "ERROR",
                    Status::Skip => "SKIP",
                };
                out.push_str(&format!("{tag:<5} {} ({} ms)", c.name, c.millis));
                if c.status != Status::Pass {
                    out.push_str(&format!("  {}", c.detail));
                }
                out.push('\n');
            }
            out.push_str(&format!(
                "{}: {} passed, {} failed, {} errors, {} skipped\n",
                r.suite,
                r.count(Status::Pass),
                r.count(Status::Fail),
                r.count(Status::Error),
                r.count(Status::Skip)
            ));
            out
        }
    }
}
