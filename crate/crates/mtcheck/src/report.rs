//! Machine-readable verdict records shared by all check families.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
    HypothesisViolated,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
            Verdict::HypothesisViolated => "hypothesis_violated",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Exact elements or residuals backing the verdict, as display strings
    /// with rationals in num/den form.
    pub witnesses: Vec<String>,
    /// Hypotheses that were assumed rather than checked.
    pub assumptions: Vec<String>,
    pub timing_ms: u64,
}

impl CheckReport {
    pub fn new(check_id: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Undecided,
            witnesses: vec![],
            assumptions: vec![],
            timing_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(mut self, w: impl ToString) -> Self {
        self.witnesses.push(w.to_string());
        self
    }

    pub fn assumption(mut self, a: impl ToString) -> Self {
        self.assumptions.push(a.to_string());
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A full run: configuration echo plus per-check reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub curve: String,
    pub reports: Vec<CheckReport>,
    pub counts: BTreeMap<String, usize>,
}

impl RunReport {
    pub fn summarise(curve: &str, reports: Vec<CheckReport>) -> Self {
        let mut counts = BTreeMap::new();
        for r in &reports {
            *counts.entry(r.verdict.as_str().to_string()).or_insert(0) += 1;
        }
        RunReport { curve: curve.to_string(), reports, counts }
    }

    pub fn exit_code(&self) -> i32 {
        if self.counts.get("fail").copied().unwrap_or(0) > 0 {
            1
        } else {
            0
        }
    }

    /// Serialisation with timings zeroed, for byte-identity comparisons.
    pub fn to_json_stable(&self) -> String {
        let mut clone = self.clone();
        for r in clone.reports.iter_mut() {
            r.timing_ms = 0;
        }
        serde_json::to_string_pretty(&clone).expect("report serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
