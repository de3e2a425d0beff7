//! Identity suites: each suite is a list of identities, each identity a
//! randomized check run for a number of seeded trials. A suite passes iff
//! every trial's defect is exactly zero.

mod catalog;

use std::fmt::{self, Write};
use std::time::Instant;

use mdx_core::exterior::mutation::with_flipped_schouten_sign;
use serde::Serialize;

use crate::generate::{GenError, Generator, GeneratorConfig};

pub use catalog::{non_integrable_witness, SUITES};

/// Result of one trial of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// Nothing was tested: both sides were zero, or the inputs fell outside
    /// the identity's hypotheses.
    Trivial,
    Fails {
        inputs: Vec<String>,
        defect: String,
    },
}

pub type CheckFn = fn(&mut Generator) -> Result<Check, GenError>;

pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    /// Deterministic example: run a single trial whatever the trial count.
    pub once: bool,
    pub check: CheckFn,
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub identities: &'static [Identity],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Trials spread over the rayon pool; falls back to sequential execution
    /// when built without the `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub trials: usize,
    pub execution: Execution,
    /// Negate the multivector part of the Schouten expansion inside every
    /// trial. The suites must then fail.
    pub flip_schouten_sign: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            trials: 200,
            execution: Execution::default(),
            flip_schouten_sign: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub trial: usize,
    pub inputs: Vec<String>,
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub statement: String,
    pub trials: usize,
    pub failed: usize,
    /// Passing trials that tested nothing (see [`Check::Trivial`]).
    pub trivial: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub identities: Vec<IdentityReport>,
    pub failures: Vec<Failure>,
    pub millis: u128,
}

impl SuiteReport {
    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &SuiteReport) -> bool {
        SuiteReport {
            millis: 0,
            ..self.clone()
        } == SuiteReport {
            millis: 0,
            ..other.clone()
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{verdict}  {}  (seed {}, {} trials, {} ms)",
            self.suite, self.seed, self.trials, self.millis
        );
        for id in &self.identities {
            let mark = if id.passed { "ok  " } else { "FAIL" };
            let _ = write!(
                out,
                "  {mark}  {:<40} {}/{}",
                id.name,
                id.trials - id.failed,
                id.trials
            );
            if id.trivial > 0 {
                let _ = write!(out, "  ({} trivial)", id.trivial);
            }
            out.push('\n');
            if let Some(f) = self.failures.iter().find(|f| f.identity == id.name) {
                let _ = writeln!(out, "        {}", id.statement);
                let _ = writeln!(out, "        counterexample (trial {}):", f.trial);
                for i in &f.inputs {
                    let _ = writeln!(out, "          {i}");
                }
                let _ = writeln!(out, "        defect: {}", f.defect);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteError {
    UnknownSuite(String),
    InvalidConfig(String),
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteError::UnknownSuite(s) => {
                let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
                write!(
                    f,
                    "unknown suite `{s}`; known suites: {}, all",
                    names.join(", ")
                )
            }
            SuiteError::InvalidConfig(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for SuiteError {}

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs `name` (or every suite for `all`) and returns one report per suite.
pub fn run_suite(
    name: &str,
    cfg: &GeneratorConfig,
    opts: &RunOptions,
) -> Result<Vec<SuiteReport>, SuiteError> {
    cfg.validate()
        .map_err(|e| SuiteError::InvalidConfig(e.to_string()))?;
    if name == "all" {
        return Ok(SUITES
            .iter()
            .enumerate()
            .map(|(i, s)| run_one(i, s, cfg, opts))
            .collect());
    }
    let (i, suite) = SUITES
        .iter()
        .enumerate()
        .find(|(_, s)| s.name == name)
        .ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    Ok(vec![run_one(i, suite, cfg, opts)])
}

fn stream(suite: usize, identity: usize, trial: usize) -> u64 {
    ((suite as u64) << 48) | ((identity as u64) << 32) | trial as u64
}

fn trial(
    suite: usize,
    identity: usize,
    t: usize,
    id: &Identity,
    cfg: &GeneratorConfig,
    flip: bool,
) -> Check {
    let run = || {
        let mut g = Generator::new(cfg, stream(suite, identity, t));
        (id.check)(&mut g)
    };
    let result = if flip {
        with_flipped_schouten_sign(run)
    } else {
        run()
    };
    result.unwrap_or_else(|e| Check::Fails {
        inputs: Vec::new(),
        defect: format!("error: {e}"),
    })
}

fn run_one(index: usize, suite: &Suite, cfg: &GeneratorConfig, opts: &RunOptions) -> SuiteReport {
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = suite
        .identities
        .iter()
        .enumerate()
        .flat_map(|(j, id)| {
            let n = if id.once { 1 } else { opts.trials };
            (0..n).map(move |t| (j, t))
        })
        .collect();
    let work = |&(j, t): &(usize, usize)| {
        trial(
            index,
            j,
            t,
            &suite.identities[j],
            cfg,
            opts.flip_schouten_sign,
        )
    };
    let results: Vec<Check> = match opts.execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            jobs.par_iter().map(work).collect()
        }
        _ => jobs.iter().map(work).collect(),
    };

    let mut identities: Vec<IdentityReport> = suite
        .identities
        .iter()
        .map(|id| IdentityReport {
            name: id.name.to_string(),
            statement: id.statement.to_string(),
            trials: 0,
            failed: 0,
            trivial: 0,
            passed: true,
        })
        .collect();
    let mut failures = Vec::new();
    for (&(j, t), check) in jobs.iter().zip(results) {
        let rep = &mut identities[j];
        rep.trials += 1;
        match check {
            Check::Holds => {}
            Check::Trivial => rep.trivial += 1,
            Check::Fails { inputs, defect } => {
                rep.failed += 1;
                if rep.passed {
                    failures.push(Failure {
                        identity: rep.name.clone(),
                        trial: t,
                        inputs,
                        defect,
                    });
                }
                rep.passed = false;
            }
        }
    }
    SuiteReport {
        suite: suite.name.to_string(),
        description: suite.description.to_string(),
        seed: cfg.seed,
        trials: opts.trials,
        passed: identities.iter().all(|i| i.passed),
        identities,
        failures,
        millis: start.elapsed().as_millis(),
    }
}
