//! Desk-scale checks of the classification results, one suite per claim.
//!
//! Every suite records each checked instance with a replayable input (a
//! graph6 string or a parameter triple). `cases` test the claim as
//! stated; `errata` test a corrected reading where the stated claim
//! fails, so a red suite still shows what does hold.

mod suites;

pub use suites::*;

use std::time::Duration;

use serde::Serialize;

/// One checked instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub input: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CaseRecord {
    pub fn new(input: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        CaseRecord {
            input: input.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }

    pub fn check(input: impl Into<String>, expected: impl ToString, computed: impl ToString, pass: bool) -> Self {
        CaseRecord {
            input: input.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationSuiteResult {
    pub suite: String,
    pub claim: String,
    pub pass: bool,
    pub cases: Vec<CaseRecord>,
    pub errata: Vec<CaseRecord>,
    /// Errors (budget exhaustion and the like), each failing the suite.
    pub budget_events: Vec<String>,
    /// Left out of the JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationSuiteResult {
    fn new(suite: &str, claim: &str) -> Self {
        VerificationSuiteResult {
            suite: suite.to_string(),
            claim: claim.to_string(),
            pass: false,
            cases: Vec::new(),
            errata: Vec::new(),
            budget_events: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn finish(mut self, elapsed: Duration) -> Self {
        self.pass = self.budget_events.is_empty() && self.cases.iter().all(|c| c.pass);
        self.elapsed = elapsed;
        self
    }

    pub fn failures(&self) -> Vec<&CaseRecord> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }

    pub fn errata_pass(&self) -> bool {
        self.errata.iter().all(|c| c.pass)
    }

    /// `V1 PASS  853 cases` style summary line.
    pub fn summary(&self) -> String {
        let failed = self.failures().len();
        let mut s = format!(
            "{} {}  {} cases, {} failed",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.cases.len(),
            failed
        );
        if !self.errata.is_empty() {
            let ef = self.errata.iter().filter(|c| !c.pass).count();
            s += &format!("; errata {} cases, {} failed", self.errata.len(), ef);
        }
        if !self.budget_events.is_empty() {
            s += &format!("; {} errors", self.budget_events.len());
        }
        s
    }
}

/// The consolidated report.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n_max: usize,
    pub sweep_bound: usize,
    pub pass: bool,
    pub suites: Vec<VerificationSuiteResult>,
}
