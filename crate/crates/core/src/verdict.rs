//! Results of the decision procedures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::transducer::Transducer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "HOLDS",
            Outcome::Fails => "FAILS",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Consecutive configurations related by Δ.
    Path,
    /// A path whose last configuration has `configurations[loop_start]` as a
    /// Δ-successor.
    Lasso,
    /// Configurations related by the relation named in the verdict note.
    Pair,
    /// A finite prefix of an infinite directed clique.
    CliquePrefix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub configurations: Vec<Word>,
    pub loop_start: Option<usize>,
}

impl Witness {
    pub fn path(configurations: Vec<Word>) -> Self {
        Self { kind: WitnessKind::Path, configurations, loop_start: None }
    }

    pub fn lasso(configurations: Vec<Word>, loop_start: usize) -> Self {
        Self { kind: WitnessKind::Lasso, configurations, loop_start: Some(loop_start) }
    }

    pub fn pair(configurations: Vec<Word>) -> Self {
        Self { kind: WitnessKind::Pair, configurations, loop_start: None }
    }

    pub fn clique_prefix(configurations: Vec<Word>) -> Self {
        Self { kind: WitnessKind::CliquePrefix, configurations, loop_start: None }
    }

    /// Checks that consecutive configurations are related by `relation` and,
    /// for lassos, that the loop closes.
    pub fn replay(&self, relation: &Transducer) -> Result<()> {
        let cs = &self.configurations;
        if cs.is_empty() {
            return Err(Error::InvalidWitness("no configurations".into()));
        }
        for (i, w) in cs.windows(2).enumerate() {
            if !relation.accepts_pair(&w[0], &w[1])? {
                return Err(Error::InvalidWitness(format!("step {i} is not a transition")));
            }
        }
        if let Some(k) = self.loop_start {
            let last = cs.last().expect("nonempty");
            if k >= cs.len() || !relation.accepts_pair(last, &cs[k])? {
                return Err(Error::InvalidWitness("loop does not close".into()));
            }
        }
        Ok(())
    }

    /// Checks that the first configuration is in `set`.
    pub fn starts_in(&self, set: &Nfa) -> Result<()> {
        match self.configurations.first() {
            Some(c) if set.accepts(c)? => Ok(()),
            _ => Err(Error::InvalidWitness("witness does not start in the given set".into())),
        }
    }

    pub fn rendered(&self, alphabet: &Alphabet) -> Vec<String> {
        self.configurations.iter().map(|c| alphabet.render(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    /// Largest configuration length fully examined by a bounded procedure.
    pub bound_used: Option<usize>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds() -> Self {
        Self { outcome: Outcome::Holds, witness: None, bound_used: None, note: None }
    }

    pub fn fails() -> Self {
        Self { outcome: Outcome::Fails, witness: None, bound_used: None, note: None }
    }

    pub fn unknown(bound: usize) -> Self {
        Self { outcome: Outcome::Unknown, witness: None, bound_used: Some(bound), note: None }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound_used = Some(bound);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == Outcome::Unknown
    }

    /// Swaps Holds and Fails.
    pub fn negated(mut self) -> Self {
        self.outcome = match self.outcome {
            Outcome::Holds => Outcome::Fails,
            Outcome::Fails => Outcome::Holds,
            Outcome::Unknown => Outcome::Unknown,
        };
        self
    }
}
