use paperfold::{Failure, VerifyReport};
use serde::{Deserialize, Serialize};

/// One suite's line in a [`RunReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub size: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjecture: bool,
    pub failures: usize,
}

/// The result of a `verify` run.
///
/// `failures` holds every failure that counts against the run: all failures
/// of proved suites, plus those of conjecture suites under `--strict`.
/// `pass` is true iff it is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pass: bool,
    pub failures: Vec<Failure>,
    #[serde(default)]
    pub suites: Vec<SuiteResult>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(suite: &str, size: usize, order: Option<usize>, seed: Option<u64>) -> Self {
        Self {
            suite: suite.to_string(),
            size,
            order,
            seed,
            pass: true,
            failures: Vec::new(),
            suites: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// Adds a suite's outcome. With a single suite the check names are kept
    /// as they are, otherwise they are prefixed by the suite name.
    pub fn add(&mut self, report: VerifyReport, strict: bool, prefix: bool) {
        self.suites.push(SuiteResult {
            suite: report.suite.clone(),
            size: report.size,
            pass: report.pass,
            conjecture: report.conjecture,
            failures: report.failures.len(),
        });
        if report.conjecture && !strict {
            return;
        }
        for mut f in report.failures {
            if prefix {
                f.check = format!("{}/{}", report.suite, f.check);
            }
            self.failures.push(f);
        }
        self.pass = self.failures.is_empty();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(suite: &str, conjecture: bool) -> VerifyReport {
        let mut r = VerifyReport::new(suite, 4);
        if conjecture {
            r = r.conjecture();
        }
        r.fail("x", 1, 2, 3, 4);
        r
    }

    #[test]
    fn conjectures_count_only_when_strict() {
        let mut lax = RunReport::new("all", 4, None, None);
        lax.add(failing("log-conjecture", true), false, true);
        assert!(lax.pass);
        assert!(!lax.suites[0].pass);

        let mut strict = RunReport::new("all", 4, None, None);
        strict.add(failing("log-conjecture", true), true, true);
        assert!(!strict.pass);
        assert_eq!(strict.failures[0].check, "log-conjecture/x");
    }

    #[test]
    fn json_round_trip() {
        let mut r = RunReport::new("thm2", 8, Some(16), Some(7));
        r.add(failing("thm2", false), false, false);
        r.elapsed_ms = 12;
        let json = serde_json::to_string(&r).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.pass);
        assert_eq!(back.failures[0].check, "x");
    }
}
