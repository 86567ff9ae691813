//! Report structures shared by the verification suites and the CLI.
//!
//! Reports are plain data: a suite never panics on a mathematical failure,
//! it records the witness and keeps counting. JSON serialization is stable
//! and versioned so downstream tooling can rely on the shape.

use serde::Serialize;
use std::time::Instant;

/// Maximum number of failure witnesses kept per suite.
pub const WITNESS_CAP: usize = 5;

/// Outcome of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    /// Up to [`WITNESS_CAP`] human-readable failure witnesses.
    pub witnesses: Vec<String>,
    pub pass: bool,
    pub millis: u128,
    /// Extra counters some suites expose (relator schema counts, ranks, ...).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub counters: Vec<(String, i64)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn start(name: impl Into<String>) -> SuiteBuilder {
        SuiteBuilder { name: name.into(), instances: 0, failures: 0, witnesses: Vec::new(), t0: Instant::now(), counters: Vec::new(), notes: Vec::new() }
    }
}

/// Incrementally built [`SuiteReport`].
pub struct SuiteBuilder {
    name: String,
    instances: u64,
    failures: u64,
    witnesses: Vec<String>,
    t0: Instant,
    counters: Vec<(String, i64)>,
    notes: Vec<String>,
}

impl SuiteBuilder {
    /// Record one checked instance; `witness` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn counter(&mut self, key: impl Into<String>, value: i64) {
        self.counters.push((key.into(), value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            pass: self.failures == 0,
            witnesses: self.witnesses,
            millis: self.t0.elapsed().as_millis(),
            counters: self.counters,
            notes: self.notes,
        }
    }
}

/// Top-level CLI report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Version of this JSON shape.
    pub schema_version: u32,
    pub tool: String,
    /// The configuration that produced the report, echoed back verbatim.
    pub config: serde_json::Value,
    pub suites: Vec<SuiteReport>,
    pub ok: bool,
    pub budget_exhausted: bool,
}

impl Report {
    pub fn new(config: serde_json::Value, suites: Vec<SuiteReport>) -> Report {
        let ok = suites.iter().all(|s| s.pass);
        Report {
            schema_version: 1,
            tool: format!("steinpair {}", env!("CARGO_PKG_VERSION")),
            config,
            suites,
            ok,
            budget_exhausted: false,
        }
    }
}
