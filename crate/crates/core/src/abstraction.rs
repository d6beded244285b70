//! Regular abstraction frameworks: interpretations, inductive constraints,
//! and the abstract problems over a supplied potential reachability
//! relation `PReach`.

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::nfa::{includes, Inclusion, Nfa};
use crate::procedures::check_egf;
use crate::rts::{Basis, Rts, ValidationReport};
use crate::search::ProductSearch;
use crate::transducer::{Direction, Transducer};
use crate::verdict::{Verdict, Witness};

/// A deterministic transducer over Γ × Σ mapping constraints to sets of
/// configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    transducer: Transducer,
}

impl Interpretation {
    pub fn new(transducer: Transducer) -> Result<Self> {
        transducer.validate_padding()?;
        if !transducer.nfa().is_deterministic() {
            return Err(Error::NotDeterministic(
                "an interpretation needs one initial state and at most one successor per symbol".into(),
            ));
        }
        Ok(Self { transducer })
    }

    pub fn transducer(&self) -> &Transducer {
        &self.transducer
    }

    pub fn constraint_alphabet(&self) -> &Alphabet {
        self.transducer.top()
    }

    pub fn configuration_alphabet(&self) -> &Alphabet {
        self.transducer.bottom()
    }

    /// `V(w) = {w} ∘ V`.
    pub fn constraint_set(&self, w: &[Letter]) -> Result<Nfa> {
        let single = Nfa::from_word(self.constraint_alphabet().clone(), w);
        self.transducer.image(&single, Direction::Post)
    }

    /// Whether `V(w)` contains `c` and not `c2`.
    pub fn separates(&self, w: &[Letter], c: &[Letter], c2: &[Letter]) -> Result<bool> {
        let set = self.constraint_set(w)?;
        Ok(set.accepts(c)? && !set.accepts(c2)?)
    }
}

/// Outcome of an inductiveness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inductiveness {
    pub inductive: bool,
    /// `(c, c')` with `c` in `V(w)`, `(c, c')` in Δ and `c'` outside `V(w)`.
    pub counterexample: Option<(Word, Word)>,
}

fn check_interpretation(rts: &Rts, v: &Interpretation) -> Result<()> {
    if v.configuration_alphabet() != rts.alphabet() {
        return Err(Error::AlphabetMismatch(
            "interpretation bottom track differs from the system alphabet".into(),
        ));
    }
    Ok(())
}

/// Whether `V(w) ∘ Δ ⊆ V(w)`.
pub fn is_inductive(rts: &Rts, v: &Interpretation, w: &[Letter]) -> Result<Inductiveness> {
    check_interpretation(rts, v)?;
    let set = v.constraint_set(w)?;
    let post = rts.delta().image(&set, Direction::Post)?;
    match includes(&post, &set)? {
        Inclusion::Holds => Ok(Inductiveness { inductive: true, counterexample: None }),
        Inclusion::Counterexample(c2) => {
            let single = Nfa::from_word(rts.alphabet().clone(), &c2);
            let c = rts
                .delta()
                .image(&single, Direction::Pre)?
                .intersect(&set)?
                .shortest_word()
                .expect("c2 has a predecessor in the set");
            Ok(Inductiveness { inductive: false, counterexample: Some((c, c2)) })
        }
    }
}

/// True only if `w` is inductive and separates `c` from `c2`, which proves
/// `c2` unreachable from `c`.
pub fn certify_unreachable(
    rts: &Rts,
    v: &Interpretation,
    w: &[Letter],
    c: &[Letter],
    c2: &[Letter],
) -> Result<bool> {
    Ok(v.separates(w, c, c2)? && is_inductive(rts, v, w)?.inductive)
}

/// Checks that `PReach` is reflexive, contains Δ, and is transitive.
pub fn validate_preach(rts: &Rts) -> Result<ValidationReport> {
    let preach = rts.relation(Basis::Potential)?;
    let mut report = ValidationReport::default();
    let id = Transducer::identity(rts.alphabet());
    report.push(rts.inclusion_check("identity ⊆ preach", &id, preach));
    report.push(rts.inclusion_check("delta ⊆ preach", rts.delta(), preach));
    let squared = preach.compose(preach)?;
    report.push(rts.inclusion_check("preach ∘ preach ⊆ preach", &squared, preach));
    Ok(report)
}

/// Holds iff no configuration of `unsafe_set` is potentially reachable.
pub fn abstract_safety(rts: &Rts, unsafe_set: &Nfa) -> Result<Verdict> {
    let reachable = rts.reachable_set(Basis::Potential)?;
    match ProductSearch::new(vec![&reachable, unsafe_set], vec![]).find(|_| true) {
        None => Ok(Verdict::holds()),
        Some(c) => {
            let single = Nfa::from_word(rts.alphabet().clone(), &c);
            let c0 = rts
                .relation(Basis::Potential)?
                .image(&single, Direction::Pre)?
                .intersect(rts.initial())?
                .shortest_word()
                .expect("c is potentially reachable");
            Ok(Verdict::fails()
                .with_witness(Witness::pair(vec![c0, c]))
                .with_note("unsafe configuration is potentially reachable (pair related by preach)"))
        }
    }
}

/// Does some potential run visit the goal infinitely often?
pub fn abstract_liveness(rts: &Rts, goal: &Nfa) -> Result<Verdict> {
    check_egf(rts, goal, Basis::Potential)
}

/// Does some potential run go on forever?
pub fn exists_infinite_potential_run(rts: &Rts) -> Result<Verdict> {
    check_egf(rts, &Nfa::universal(rts.alphabet().clone()), Basis::Potential)
}

/// Every potential run is finite.
pub fn abstract_sure_termination(rts: &Rts) -> Result<Verdict> {
    Ok(exists_infinite_potential_run(rts)?.negated())
}

/// A goal set with an optional NFA for its pre-image under the reachability
/// relation.
#[derive(Clone, Debug)]
pub struct PropertyGoal {
    pub goal: Nfa,
    pub pre_of_goal: Option<Nfa>,
}

/// Checks `PReach(I) ⊆ T̄ ∩ pre_of_goal`. Holds proves almost-sure recurrent
/// reachability of the concrete system; Fails is inconclusive for it.
pub fn abstract_as_liveness(rts: &Rts, goal: &PropertyGoal) -> Result<Verdict> {
    let pre_goal = goal.pre_of_goal.as_ref().ok_or(Error::MissingPreOfGoal)?;
    if pre_goal.alphabet() != rts.alphabet() {
        return Err(Error::AlphabetMismatch("pre_of_goal alphabet".into()));
    }
    let reachable = rts.reachable_set(Basis::Potential)?;
    let enabled = rts.enabled();
    let search = ProductSearch::new(vec![&reachable], vec![&enabled, pre_goal]);
    match search.find(|f| !f[0] || !f[1]) {
        None => Ok(Verdict::holds()
            .with_note("the concrete system reaches the goal infinitely often almost surely")),
        Some(c) => {
            let single = Nfa::from_word(rts.alphabet().clone(), &c);
            let c0 = rts
                .relation(Basis::Potential)?
                .image(&single, Direction::Pre)?
                .intersect(rts.initial())?
                .shortest_word()
                .expect("c is potentially reachable");
            let why = if enabled.accepts(&c)? { "cannot reach the goal" } else { "is terminating" };
            Ok(Verdict::fails().with_witness(Witness::pair(vec![c0, c])).with_note(format!(
                "potentially reachable configuration {why}; inconclusive for the concrete system"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn toggle_delta() -> Transducer {
        Transducer::from_pairs(&ab(), &ab(), [(&[0][..], &[1][..])])
    }

    /// Constraint alphabet {x}; V(x) = {a}, V(ε) = ∅.
    fn single_a() -> Interpretation {
        let gamma = Alphabet::new(["x"]).unwrap();
        Interpretation::new(Transducer::from_pairs(&gamma, &ab(), [(&[0][..], &[0][..])])).unwrap()
    }

    #[test]
    fn identity_interpretation() {
        let v = Interpretation::new(Transducer::identity(&ab())).unwrap();
        let set = v.constraint_set(&[0, 1]).unwrap();
        assert_eq!(set.first_words(5), (vec![vec![0, 1]], false));
        let two = Transducer::from_pairs(&ab(), &ab(), [(&[0][..], &[0][..]), (&[0][..], &[1][..])]);
        let fork = two.union(&Transducer::identity(&ab())).unwrap();
        assert!(matches!(Interpretation::new(fork), Err(Error::NotDeterministic(_))));
    }

    #[test]
    fn inductive_and_separation() {
        let rts = Rts::new(Nfa::from_word(ab(), &[0]), toggle_delta()).unwrap();
        let v = single_a();
        let r = is_inductive(&rts, &v, &[0]).unwrap();
        assert_eq!(r, Inductiveness { inductive: false, counterexample: Some((vec![0], vec![1])) });
        assert!(is_inductive(&rts, &v, &[]).unwrap().inductive);
        assert!(v.separates(&[0], &[0], &[1]).unwrap());
        assert!(!v.separates(&[0], &[0], &[0]).unwrap());

        let id = Rts::new(Nfa::from_word(ab(), &[0]), Transducer::identity(&ab())).unwrap();
        assert!(certify_unreachable(&id, &v, &[0], &[0], &[1]).unwrap());
        assert!(!certify_unreachable(&rts, &v, &[0], &[0], &[1]).unwrap());
    }

    #[test]
    fn preach_validation() {
        let al = Alphabet::new(["a"]).unwrap();
        let univ = Transducer::universal(&al, &al);
        let rts = Rts::new(Nfa::universal(al.clone()), univ.clone()).unwrap().with_preach(univ).unwrap();
        assert!(validate_preach(&rts).unwrap().passed());
    }

    #[test]
    fn sure_termination_of_toggle() {
        let delta = toggle_delta();
        let preach = delta.union(&Transducer::identity(&ab())).unwrap();
        let rts = Rts::new(Nfa::from_word(ab(), &[0]), delta).unwrap().with_preach(preach).unwrap();
        assert!(abstract_sure_termination(&rts).unwrap().is_holds());
        let goal = PropertyGoal { goal: Nfa::from_word(ab(), &[0]), pre_of_goal: Some(Nfa::from_word(ab(), &[0])) };
        let v = abstract_as_liveness(&rts, &goal).unwrap();
        assert!(v.is_fails());
        assert_eq!(v.witness.unwrap().configurations, vec![vec![0], vec![1]]);
    }
}
