//! Machine-readable verification reports.
//!
//! Reports are deterministic functions of (corpus, seed, crate version):
//! all wall-clock data lives in the single `timing` field, which is
//! zeroed out before computing the report digest, so two runs over the
//! same inputs produce byte-identical reports modulo that one field.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// One verified (or skipped) law instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Stable identifier, e.g. `pentagon[12]`.
    pub id: String,
    /// The law being checked, e.g. `pentagon coherence`.
    pub law: String,
    /// Instance description (which algebras/bimodules).
    pub instance: String,
    pub status: CheckStatus,
    /// Failure detail or skip reason.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// Dimensions of the objects involved.
    pub witness_dims: Vec<usize>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>, law: impl Into<String>, instance: impl Into<String>, dims: Vec<usize>) -> Self {
        CheckRecord { id: id.into(), law: law.into(), instance: instance.into(), status: CheckStatus::Pass, reason: None, witness_dims: dims }
    }

    pub fn fail(id: impl Into<String>, law: impl Into<String>, instance: impl Into<String>, dims: Vec<usize>, reason: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), law: law.into(), instance: instance.into(), status: CheckStatus::Fail, reason: Some(reason.into()), witness_dims: dims }
    }

    pub fn skip(id: impl Into<String>, law: impl Into<String>, instance: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckRecord { id: id.into(), law: law.into(), instance: instance.into(), status: CheckStatus::Skip, reason: Some(reason.into()), witness_dims: vec![] }
    }

    /// Pass/fail from a boolean condition.
    pub fn verdict(
        id: impl Into<String>,
        law: impl Into<String>,
        instance: impl Into<String>,
        dims: Vec<usize>,
        ok: bool,
        detail: &str,
    ) -> Self {
        if ok {
            CheckRecord::pass(id, law, instance, dims)
        } else {
            CheckRecord::fail(id, law, instance, dims, detail)
        }
    }
}

/// A single corrupted coherence cell, used by the mutation-sensitivity
/// gate: while the named suite runs, the named cell kind has 1 added to
/// one matrix entry. Exactly that suite must then fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub suite: String,
    pub cell: String,
    pub entry: (usize, usize),
}

/// Per-suite slice of a report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
        let failed = checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        let skipped = checks.iter().filter(|c| c.status == CheckStatus::Skip).count();
        SuiteReport { name: name.into(), checks, passed, failed, skipped }
    }
}

/// All timing data, isolated so digests can ignore it.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u128,
    pub per_suite_ms: Vec<(String, u128)>,
}

/// Full verification report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub corpus_digest: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub failures: usize,
    /// SHA-256 over the serialisation with `digest` and `timing` cleared.
    pub digest: String,
    pub timing: Timing,
}

impl Report {
    pub fn assemble(
        corpus_digest: String,
        seed: u64,
        suites: Vec<SuiteReport>,
        timing: Timing,
    ) -> Report {
        let failures = suites.iter().map(|s| s.failed).sum();
        let mut report = Report {
            version: crate::VERSION.to_string(),
            corpus_digest,
            seed,
            suites,
            failures,
            digest: String::new(),
            timing: Timing::default(),
        };
        report.digest = report.compute_digest();
        report.timing = timing;
        report
    }

    /// Digest over the deterministic part of the report.
    pub fn compute_digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.digest = String::new();
        canonical.timing = Timing::default();
        let json = serde_json::to_vec(&canonical).expect("report serialises");
        let mut hasher = Sha256::new();
        hasher.update(&json);
        let hex: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_timing() {
        let checks = vec![CheckRecord::pass("a[0]", "law", "inst", vec![1, 2])];
        let t1 = Timing { total_ms: 10, per_suite_ms: vec![("s".to_string(), 10)] };
        let t2 = Timing { total_ms: 99, per_suite_ms: vec![("s".to_string(), 99)] };
        let r1 = Report::assemble("d".into(), 7, vec![SuiteReport::new("s", checks.clone())], t1);
        let r2 = Report::assemble("d".into(), 7, vec![SuiteReport::new("s", checks)], t2);
        assert_eq!(r1.digest, r2.digest);
        assert_eq!(r1.digest, r1.compute_digest());
    }

    #[test]
    fn failure_counting() {
        let checks = vec![
            CheckRecord::pass("a[0]", "law", "i", vec![]),
            CheckRecord::fail("a[1]", "law", "i", vec![], "mismatch"),
            CheckRecord::skip("a[2]", "law", "i", "NotSemisimple"),
        ];
        let suite = SuiteReport::new("s", checks);
        assert_eq!((suite.passed, suite.failed, suite.skipped), (1, 1, 1));
        let r = Report::assemble("d".into(), 7, vec![suite], Timing::default());
        assert_eq!(r.failures, 1);
    }
}
