//! Check reports: which diagrams were evaluated, which commuted, and both
//! composed path payloads on failure.

use serde::Serialize;

/// Verdict for one law instance (one diagram or one structure-morphism
/// existence check) at a tuple of objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramVerdict {
    pub law: String,
    pub at: Vec<String>,
    pub ok: bool,
    /// Composite of the first path, rendered, when the diagram failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    /// Composite of the second path, rendered, when the diagram failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of checking one structure: structural problems (missing or
/// ill-typed data, boundary mismatches) and per-diagram law verdicts.
/// Structural problems suppress law evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub structural: Vec<String>,
    pub diagrams: Vec<DiagramVerdict>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            structural: Vec::new(),
            diagrams: Vec::new(),
        }
    }

    pub fn structural_ok(&self) -> bool {
        self.structural.is_empty()
    }

    pub fn laws_ok(&self) -> bool {
        self.diagrams.iter().all(|d| d.ok)
    }

    pub fn passed(&self) -> bool {
        self.structural_ok() && self.laws_ok()
    }

    pub fn push_structural(&mut self, msg: impl Into<String>) {
        self.structural.push(msg.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &DiagramVerdict> {
        self.diagrams.iter().filter(|d| !d.ok)
    }

    /// The verdict ok-flags in evaluation order; handy for comparing two
    /// checkers verdict-for-verdict.
    pub fn verdict_vector(&self) -> Vec<(String, Vec<String>, bool)> {
        self.diagrams
            .iter()
            .map(|d| (d.law.clone(), d.at.clone(), d.ok))
            .collect()
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(s) = self.structural.first() {
            return Some(format!("structural: {s}"));
        }
        self.failures()
            .next()
            .map(|d| format!("{} at [{}]", d.law, d.at.join(",")))
    }
}
