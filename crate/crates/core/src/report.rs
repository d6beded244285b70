//! Command reports in human-readable and JSON form.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::rts::{Check, ValidationReport};
use crate::verdict::{Outcome, Verdict, WitnessKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

/// A witness with configurations rendered as space-joined symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedWitness {
    pub kind: WitnessKind,
    pub configurations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loop_start: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub witness: Option<RenderedWitness>,
    pub bound_used: Option<usize>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Command-specific payload, such as a serialized automaton.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, outcome: Outcome) -> Self {
        Self {
            command: command.into(),
            outcome,
            witness: None,
            bound_used: None,
            checks: Vec::new(),
            elapsed_ms: 0,
            note: None,
            output: None,
            data: None,
        }
    }

    pub fn from_verdict(command: impl Into<String>, verdict: &Verdict, alphabet: &Alphabet) -> Self {
        let mut r = Self::new(command, verdict.outcome);
        r.witness = verdict.witness.as_ref().map(|w| RenderedWitness {
            kind: w.kind,
            configurations: w.rendered(alphabet),
            loop_start: w.loop_start,
        });
        r.bound_used = verdict.bound_used;
        r.note = verdict.note.clone();
        r
    }

    pub fn from_checks(command: impl Into<String>, report: &ValidationReport) -> Self {
        let outcome = if report.passed() { Outcome::Holds } else { Outcome::Fails };
        let mut r = Self::new(command, outcome);
        r.checks = report.checks.clone();
        r
    }

    pub fn from_bool(command: impl Into<String>, value: bool) -> Self {
        Self::new(command, if value { Outcome::Holds } else { Outcome::Fails })
    }

    pub fn with_data(mut self, value: &impl Serialize) -> Self {
        self.data = Some(serde_json::to_value(value).expect("payload serializes"));
        self
    }

    /// 0 for Holds, 1 for Fails, 2 for Unknown.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Unknown => 2,
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Human => self.human(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn human(&self) -> String {
        let mut out = String::new();
        let show = |c: &str| if c.is_empty() { "ε".to_string() } else { c.to_string() };
        let _ = writeln!(out, "COMMAND: {}", self.command);
        match self.bound_used {
            Some(b) => {
                let _ = writeln!(out, "VERDICT: {} (bound {b})", self.outcome);
            }
            None => {
                let _ = writeln!(out, "VERDICT: {}", self.outcome);
            }
        }
        if let Some(note) = &self.note {
            let _ = writeln!(out, "NOTE: {note}");
        }
        if let Some(w) = &self.witness {
            let kind = serde_json::to_value(w.kind).expect("kind serializes");
            let _ = writeln!(out, "WITNESS ({}):", kind.as_str().unwrap_or("?"));
            for (i, c) in w.configurations.iter().enumerate() {
                let _ = writeln!(out, "  {i}: {}", show(c));
            }
            if let Some(l) = w.loop_start {
                let _ = writeln!(out, "  loops back to {l}");
            }
        }
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let _ = write!(out, "CHECK {status}: {}", c.name);
            if let Some((u, w)) = &c.counterexample {
                let _ = write!(out, " (counterexample {} -> {})", show(u), show(w));
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, " ({d})");
            }
            out.push('\n');
        }
        if let Some(data) = &self.data {
            if let Some(map) = data.as_object() {
                for (k, v) in map {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
        }
        if let Some(o) = &self.output {
            out.push_str(o);
            if !o.ends_with('\n') {
                out.push('\n');
            }
        }
        let _ = writeln!(out, "ELAPSED: {} ms", self.elapsed_ms);
        out
    }
}
