//! Machine-readable check and scenario reports.
//!
//! Reports serialize deterministically: field order is fixed, collections
//! are ordered, and no wall-clock data enters the serialized form, so a
//! re-run with identical parameters reproduces the bytes exactly.

use std::collections::BTreeMap;

use serde::Serialize;

/// A failure witness. The sample is canonical text that replays through the
/// expression evaluator.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub sample: String,
    pub detail: String,
}

/// Result of one axiom checker run.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementReport {
    pub axiom: String,
    pub sample_count: usize,
    pub failures: Vec<Witness>,
}

impl ComplementReport {
    pub fn new(axiom: &str, sample_count: usize) -> Self {
        ComplementReport {
            axiom: axiom.to_string(),
            sample_count,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One named assertion inside a scenario.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Scenario outcome. Parameters are sorted by key; assertions appear in
/// sample order.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub notes: Vec<String>,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            assertions: Vec::new(),
            passed: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, text: &str) {
        self.notes.push(text.to_string());
    }

    pub fn assert_that(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        if !pass {
            self.passed = false;
        }
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            witness: if pass { None } else { witness },
        });
    }

    pub fn absorb(&mut self, report: &ComplementReport) {
        let name = format!("{} ({} samples)", report.axiom, report.sample_count);
        let witness = report
            .failures
            .first()
            .map(|w| format!("{}: {}", w.sample, w.detail));
        self.assert_that(name, report.passed(), witness);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// Short human-readable summary, one line per assertion.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario {}: {}\n",
            self.scenario,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        for a in &self.assertions {
            out.push_str(&format!(
                "  [{}] {}\n",
                if a.pass { "ok" } else { "FAIL" },
                a.name
            ));
            if let Some(w) = &a.witness {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        out
    }
}
