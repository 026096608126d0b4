//! Verification reports shared by every identity checker.

use serde::{Deserialize, Serialize};
use std::fmt::Display;

/// One violated entry of a checked identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Which identity of the suite failed.
    pub check: String,
    pub i: usize,
    pub j: usize,
    pub expected: String,
    pub got: String,
}

/// Outcome of a verification suite.
///
/// `pass` is true iff `failures` is empty. Failures are kept in the order the
/// checks ran, each check contributing its mismatches sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub size: usize,
    pub pass: bool,
    /// Set for suites that test a computational observation rather than a
    /// proved statement.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjecture: bool,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>, size: usize) -> Self {
        Self {
            suite: suite.into(),
            size,
            pass: true,
            conjecture: false,
            failures: Vec::new(),
        }
    }

    pub fn conjecture(mut self) -> Self {
        self.conjecture = true;
        self
    }

    pub fn fail(
        &mut self,
        check: &str,
        i: usize,
        j: usize,
        expected: impl Display,
        got: impl Display,
    ) {
        self.failures.push(Failure {
            check: check.to_string(),
            i,
            j,
            expected: expected.to_string(),
            got: got.to_string(),
        });
        self.pass = false;
    }

    /// Records a scalar condition; `i`/`j` are zero.
    pub fn check_eq<T: PartialEq + Display>(&mut self, check: &str, expected: T, got: T) {
        if expected != got {
            self.fail(check, 0, 0, expected, got);
        }
    }

    pub fn check(&mut self, check: &str, ok: bool) {
        if !ok {
            self.fail(check, 0, 0, true, false);
        }
    }

    /// Appends every failure of `other`, prefixing its check names.
    pub fn absorb(&mut self, other: VerifyReport) {
        for mut f in other.failures {
            f.check = format!("{}/{}", other.suite, f.check);
            self.failures.push(f);
        }
        self.pass = self.failures.is_empty();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}
