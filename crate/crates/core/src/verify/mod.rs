//! Invariant suites over the built-in corpus.

mod suites;

use crate::tolerance::Tolerances;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

pub use suites::*;

pub const CORPUS: [&str; 4] = ["square_torus", "octagon_genus2", "mixed_torus", "example_sigma"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Validation,
    Oracle,
    Lattice,
    Clearance,
    Bigons,
    Ties,
    Envelope,
    Density,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Validation,
        Suite::Oracle,
        Suite::Lattice,
        Suite::Clearance,
        Suite::Bigons,
        Suite::Ties,
        Suite::Envelope,
        Suite::Density,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Validation => "validation",
            Suite::Oracle => "oracle",
            Suite::Lattice => "lattice",
            Suite::Clearance => "clearance",
            Suite::Bigons => "bigons",
            Suite::Ties => "ties",
            Suite::Envelope => "envelope",
            Suite::Density => "density",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Built-in surfaces the suites run on.
    pub corpus: Vec<String>,
    /// Perturb one polygon vertex of every surface before validating it.
    pub fault_injection: bool,
    /// Random segment queries per corpus surface in the oracle suite.
    pub segment_queries: usize,
    pub suites: Vec<Suite>,
    pub tolerances: Tolerances,
    pub max_cells: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            corpus: CORPUS.iter().map(|s| s.to_string()).collect(),
            fault_injection: false,
            segment_queries: 10,
            suites: Suite::ALL.to_vec(),
            tolerances: Tolerances::default(),
            max_cells: crate::tolerance::MAX_CELLS,
        }
    }
}

impl VerifyConfig {
    pub fn uses(&self, name: &str) -> bool {
        self.corpus.iter().any(|c| c == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub passed: bool,
    pub measures: BTreeMap<String, Value>,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(suite: Suite) -> Self {
        Self { suite, passed: true, measures: BTreeMap::new(), failures: Vec::new() }
    }

    fn measure(&mut self, key: &str, v: impl Serialize) {
        self.measures.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    /// Infinite values are written as the string "inf" rather than null.
    fn measure_len(&mut self, key: &str, v: f64) {
        if v.is_finite() {
            self.measure(key, v);
        } else {
            self.measure(key, "inf");
        }
    }

    fn skip(&mut self, why: &str) {
        self.measures.insert("skipped".into(), Value::String(why.into()));
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }

    fn fail(&mut self, e: impl std::fmt::Display) {
        self.passed = false;
        self.failures.push(e.to_string());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub config: VerifyConfig,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteResult {
    match suite {
        Suite::Validation => validation(cfg),
        Suite::Oracle => oracle(cfg),
        Suite::Lattice => lattice(cfg),
        Suite::Clearance => clearance(cfg),
        Suite::Bigons => bigons(cfg),
        Suite::Ties => ties(cfg),
        Suite::Envelope => envelope(cfg),
        Suite::Density => density(cfg),
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let suites: Vec<SuiteResult> = cfg.suites.iter().map(|&s| run_suite(s, cfg)).collect();
    VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}
