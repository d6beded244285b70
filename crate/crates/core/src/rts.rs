//! Regular transition systems and the sets derived from them.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, DEFAULT_STATE_CAP};
use crate::transducer::{Direction, RelationInclusion, Transducer};

/// Resource limits shared by every procedure run on an [`Rts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of subset states created by a determinization.
    pub state_cap: usize,
    /// Maximum number of configurations in one explicit slice.
    pub config_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { state_cap: DEFAULT_STATE_CAP, config_cap: 200_000 }
    }
}

/// Which reachability relation a procedure runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// The supplied reachability relation `Reach`.
    Exact,
    /// The supplied potential reachability relation `PReach`.
    Potential,
}

impl Basis {
    pub fn relation_name(self) -> &'static str {
        match self {
            Basis::Exact => "reach",
            Basis::Potential => "preach",
        }
    }
}

/// A regular transition system: initial set, transition relation, and the
/// optional reachability relations supplied with it.
#[derive(Clone)]
pub struct Rts {
    alphabet: Alphabet,
    initial: Nfa,
    delta: Transducer,
    reach: Option<Transducer>,
    preach: Option<Transducer>,
    length_preserving: bool,
    limits: Limits,
    terminating: OnceLock<Nfa>,
}

impl Rts {
    pub fn new(initial: Nfa, delta: Transducer) -> Result<Self> {
        let alphabet = initial.alphabet().clone();
        for (what, a) in [("delta top", delta.top()), ("delta bottom", delta.bottom())] {
            if *a != alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "{what} track is {a:?}, initial set is over {alphabet:?}"
                )));
            }
        }
        let length_preserving = delta.is_length_preserving();
        Ok(Self {
            alphabet,
            initial,
            delta,
            reach: None,
            preach: None,
            length_preserving,
            limits: Limits::default(),
            terminating: OnceLock::new(),
        })
    }

    fn check_relation(&self, what: &str, t: &Transducer) -> Result<()> {
        if *t.top() != self.alphabet || *t.bottom() != self.alphabet {
            return Err(Error::AlphabetMismatch(format!("{what} is not over {:?}", self.alphabet)));
        }
        Ok(())
    }

    pub fn with_reach(mut self, reach: Transducer) -> Result<Self> {
        self.check_relation("reach", &reach)?;
        self.reach = Some(reach);
        Ok(self)
    }

    pub fn with_preach(mut self, preach: Transducer) -> Result<Self> {
        self.check_relation("preach", &preach)?;
        self.preach = Some(preach);
        Ok(self)
    }

    pub fn with_initial(&self, initial: Nfa) -> Result<Self> {
        if *initial.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch("initial set".into()));
        }
        Ok(Self { initial, terminating: self.terminating.clone(), ..self.clone() })
    }

    pub fn with_delta(&self, delta: Transducer) -> Result<Self> {
        let mut fresh = Rts::new(self.initial.clone(), delta)?;
        fresh.reach = self.reach.clone();
        fresh.preach = self.preach.clone();
        fresh.limits = self.limits;
        Ok(fresh)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// The same system with initial configurations restricted to length `n`.
    pub fn restrict_to_length(&self, n: usize) -> Result<Self> {
        let initial = self.initial.intersect(&Nfa::exact_length(self.alphabet.clone(), n))?;
        self.with_initial(initial)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> &Nfa {
        &self.initial
    }

    pub fn delta(&self) -> &Transducer {
        &self.delta
    }

    pub fn reach(&self) -> Option<&Transducer> {
        self.reach.as_ref()
    }

    pub fn preach(&self) -> Option<&Transducer> {
        self.preach.as_ref()
    }

    pub fn is_length_preserving(&self) -> bool {
        self.length_preserving
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn relation(&self, basis: Basis) -> Result<&Transducer> {
        match basis {
            Basis::Exact => self.reach.as_ref().ok_or(Error::MissingRelation("reach")),
            Basis::Potential => self.preach.as_ref().ok_or(Error::MissingRelation("preach")),
        }
    }

    /// Configurations with at least one successor, `Δ⁻¹(Σ*)`.
    pub fn enabled(&self) -> Nfa {
        self.delta
            .image(&Nfa::universal(self.alphabet.clone()), Direction::Pre)
            .expect("delta is over the system alphabet")
    }

    /// Terminating configurations as a complete DFA. Computed once.
    pub fn terminating(&self) -> Result<Nfa> {
        if let Some(t) = self.terminating.get() {
            return Ok(t.clone());
        }
        let t = self.enabled().complement_capped(self.limits.state_cap)?;
        Ok(self.terminating.get_or_init(|| t).clone())
    }

    /// Image of the initial set under the chosen relation.
    pub fn reachable_set(&self, basis: Basis) -> Result<Nfa> {
        self.relation(basis)?.image(&self.initial, Direction::Post)
    }

    /// Successors of `c` in shortest-then-lexicographic order, at most `cap`,
    /// and whether the list was truncated.
    pub fn successors(&self, c: &[Letter], cap: usize) -> Result<(Vec<Word>, bool)> {
        if self.length_preserving {
            let all = self.delta.lp_successors(c)?;
            let truncated = all.len() > cap;
            return Ok((all.into_iter().take(cap).collect(), truncated));
        }
        self.delta.successors(c, cap)
    }

    pub fn render(&self, c: &[Letter]) -> String {
        self.alphabet.render(c)
    }

    /// Consistency report: padding, length preservation, and the necessary
    /// conditions `Id ⊆ Reach` and `Δ ⊆ Reach`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        report.push(Check::pass("alphabets agree"));
        report.push(padding_check("delta padding", &self.delta));
        for (name, rel) in [("reach", &self.reach), ("preach", &self.preach)] {
            let Some(rel) = rel else { continue };
            report.push(padding_check(&format!("{name} padding"), rel));
            if self.length_preserving {
                let lp = rel.is_length_preserving();
                report.push(Check {
                    name: format!("{name} length-preserving"),
                    passed: lp,
                    counterexample: None,
                    detail: (!lp).then(|| "delta is length-preserving but the relation is not".into()),
                });
            }
            if name == "reach" {
                report.push(self.inclusion_check(
                    "identity ⊆ reach",
                    &Transducer::identity(&self.alphabet),
                    rel,
                ));
                report.push(self.inclusion_check("delta ⊆ reach", &self.delta, rel));
            }
        }
        report
    }

    pub(crate) fn inclusion_check(&self, name: &str, small: &Transducer, big: &Transducer) -> Check {
        match small.relation_includes(big) {
            Ok(RelationInclusion::Holds) => Check::pass(name),
            Ok(RelationInclusion::Counterexample(u, w)) => Check {
                name: name.to_string(),
                passed: false,
                counterexample: Some((self.render(&u), self.render(&w))),
                detail: None,
            },
            Err(e) => Check {
                name: name.to_string(),
                passed: false,
                counterexample: None,
                detail: Some(e.to_string()),
            },
        }
    }
}

fn padding_check(name: &str, t: &Transducer) -> Check {
    match t.validate_padding() {
        Ok(()) => Check::pass(name),
        Err(e) => Check {
            name: name.to_string(),
            passed: false,
            counterexample: None,
            detail: Some(e.to_string()),
        },
    }
}

impl fmt::Debug for Rts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rts")
            .field("alphabet", &self.alphabet)
            .field("initial_states", &self.initial.num_states())
            .field("delta_states", &self.delta.num_states())
            .field("reach", &self.reach.as_ref().map(Transducer::num_states))
            .field("preach", &self.preach.as_ref().map(Transducer::num_states))
            .field("length_preserving", &self.length_preserving)
            .finish()
    }
}

/// One named check of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// A pair `(c, c')` violating the check, rendered as words.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Self { name: name.to_string(), passed: true, counterexample: None, detail: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|c| match (&c.counterexample, &c.detail) {
                (Some((u, w)), _) => format!("{} (counterexample `{u}` -> `{w}`)", c.name),
                (None, Some(d)) => format!("{} ({d})", c.name),
                (None, None) => c.name.clone(),
            })
            .collect();
        if failed.is_empty() {
            format!("all {} checks passed", self.checks.len())
        } else {
            format!("validation failed: {}", failed.join("; "))
        }
    }

    /// `Ok` if every check passed, the report as an error otherwise.
    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Validation(Box::new(self)))
        }
    }
}
