//! Structured pass/fail reports for the verification commands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A concrete witness for a failed check: the object it failed on, the index
/// involved if any, and the two values that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub node: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub lhs: String,
    pub rhs: String,
}

/// Result of one verification run.  `params` records what was checked and
/// `sizes` how large the objects involved were, so a report is meaningful on
/// its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub sizes: BTreeMap<String, u64>,
}

impl Report {
    pub fn pass(check: &str) -> Self {
        Report {
            check: check.to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            counterexample: None,
            sizes: BTreeMap::new(),
        }
    }

    pub fn fail(check: &str, counterexample: Counterexample) -> Self {
        Report {
            counterexample: Some(counterexample),
            verdict: Verdict::Fail,
            ..Report::pass(check)
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_size(mut self, key: &str, value: u64) -> Self {
        self.sizes.insert(key.to_string(), value);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Merge another report into this one: the verdict degrades to `Fail` if
    /// either failed, and the first counterexample wins.
    pub fn and(mut self, other: Report) -> Self {
        if self.is_pass() && !other.is_pass() {
            self.verdict = Verdict::Fail;
            self.counterexample = other.counterexample.clone();
        }
        for (k, v) in other.params {
            self.params.entry(k).or_insert(v);
        }
        for (k, v) in other.sizes {
            self.sizes.entry(k).or_insert(v);
        }
        self
    }
}
