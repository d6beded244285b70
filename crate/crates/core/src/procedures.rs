//! Symbolic decision procedures over a system with a supplied reachability
//! relation, and the bounded procedures for the sure and almost-sure
//! reachability properties.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Word;
use crate::clique;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::oracle::{FiniteSlice, Property};
use crate::rts::{Basis, Rts};
use crate::search::ProductSearch;
use crate::transducer::{Direction, Track};
use crate::verdict::{Verdict, Witness};

/// Default length bound of the bounded procedures.
pub const DEFAULT_MAX_LENGTH: usize = 8;

fn require_lp(rts: &Rts) -> Result<()> {
    if rts.is_length_preserving() {
        Ok(())
    } else {
        Err(Error::NotLengthPreserving)
    }
}

fn check_goal(rts: &Rts, goal: &Nfa) -> Result<()> {
    if goal.alphabet() != rts.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "goal is over {:?}, system over {:?}",
            goal.alphabet(),
            rts.alphabet()
        )));
    }
    Ok(())
}

/// Shortest Δ-path from an initial configuration to `target`, searched in
/// the slice of `target`'s length. `None` if the search exceeds the
/// configuration cap or finds no path.
pub fn path_to(rts: &Rts, target: &Word) -> Result<Option<Vec<Word>>> {
    if !rts.is_length_preserving() {
        return Ok(None);
    }
    let n = target.len();
    let cap = rts.limits().config_cap;
    let sources = rts.initial().words_of_length(n);
    if sources.len() > cap {
        return Ok(None);
    }
    let mut parent: HashMap<Word, Option<Word>> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in sources {
        parent.insert(s.clone(), None);
        queue.push_back(s);
    }
    while let Some(c) = queue.pop_front() {
        if c == *target {
            let mut path = vec![c.clone()];
            let mut cur = c;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        for s in rts.delta().lp_successors(&c)? {
            if !parent.contains_key(&s) {
                if parent.len() >= cap {
                    return Ok(None);
                }
                parent.insert(s.clone(), Some(c.clone()));
                queue.push_back(s);
            }
        }
    }
    Ok(None)
}

/// Witness for a configuration `c` found in the image of the initial set:
/// a Δ-path when one can be reconstructed (exact basis, length-preserving),
/// otherwise the pair `(c0, c)` of the chosen relation.
fn reach_witness(rts: &Rts, basis: Basis, c: &Word) -> Result<(Witness, Option<String>)> {
    if basis == Basis::Exact {
        if let Some(path) = path_to(rts, c)? {
            return Ok((Witness::path(path), None));
        }
    }
    let rel = rts.relation(basis)?;
    let single = Nfa::from_word(rts.alphabet().clone(), c);
    let sources = rel.image(&single, Direction::Pre)?.intersect(rts.initial())?;
    let note = format!("witness pair is related by {}", basis.relation_name());
    Ok(match sources.shortest_word() {
        Some(c0) => (Witness::pair(vec![c0, c.clone()]), Some(note)),
        None => (Witness::pair(vec![c.clone()]), Some(note)),
    })
}

fn attach(verdict: Verdict, (witness, note): (Witness, Option<String>)) -> Verdict {
    let v = verdict.with_witness(witness);
    match note {
        Some(n) => v.with_note(n),
        None => v,
    }
}

/// Is some goal configuration reachable?
pub fn check_ef(rts: &Rts, goal: &Nfa) -> Result<Verdict> {
    check_goal(rts, goal)?;
    let reachable = rts.reachable_set(Basis::Exact)?;
    match ProductSearch::new(vec![&reachable, goal], vec![]).find(|_| true) {
        Some(c) => Ok(attach(Verdict::holds(), reach_witness(rts, Basis::Exact, &c)?)),
        None => Ok(Verdict::fails()),
    }
}

/// No reachable configuration is terminating. Searches the reachable set
/// against the subset construction of `Δ⁻¹(Σ*)` letter by letter.
pub fn check_deadlock_freedom(rts: &Rts, basis: Basis) -> Result<Verdict> {
    let reachable = rts.reachable_set(basis)?;
    let enabled = rts.enabled();
    match ProductSearch::new(vec![&reachable], vec![&enabled]).find(|f| !f[0]) {
        Some(c) => Ok(attach(Verdict::fails(), reach_witness(rts, basis, &c)?)),
        None => Ok(Verdict::holds()),
    }
}

/// Almost-sure recurrent reachability of a length-preserving system:
/// every reachable configuration has a successor and can reach the goal.
pub fn check_as_gf(rts: &Rts, goal: &Nfa) -> Result<Verdict> {
    require_lp(rts)?;
    check_goal(rts, goal)?;
    let reach = rts.relation(Basis::Exact)?;
    let reachable = reach.image(rts.initial(), Direction::Post)?;
    let enabled = rts.enabled();
    let pre_goal = reach.image(goal, Direction::Pre)?;
    let search = ProductSearch::new(vec![&reachable], vec![&enabled, &pre_goal]);
    match search.find(|f| !f[0] || !f[1]) {
        Some(c) => {
            let why = if enabled.accepts(&c)? {
                "reachable configuration cannot reach the goal"
            } else {
                "reachable configuration is terminating"
            };
            let (w, _) = reach_witness(rts, Basis::Exact, &c)?;
            Ok(Verdict::fails().with_witness(w).with_note(why))
        }
        None => Ok(Verdict::holds()),
    }
}

/// Almost-sure termination of a length-preserving system: every reachable
/// configuration can reach a terminating one.
pub fn check_as_termination(rts: &Rts) -> Result<Verdict> {
    require_lp(rts)?;
    let reach = rts.relation(Basis::Exact)?;
    let reachable = reach.image(rts.initial(), Direction::Post)?;
    let terminating = rts.terminating()?;
    let pre_t = reach.image(&terminating, Direction::Pre)?;
    match ProductSearch::new(vec![&reachable], vec![&pre_t]).find(|f| !f[0]) {
        Some(c) => {
            let (w, _) = reach_witness(rts, Basis::Exact, &c)?;
            Ok(Verdict::fails()
                .with_witness(w)
                .with_note("no terminating configuration is reachable from the last configuration"))
        }
        None => Ok(Verdict::holds()),
    }
}

/// Condition (a): some goal configuration `c` in the image of the initial
/// set with `(c, c)` in `Δ ∪ (R ∖ Id)²`.
///
/// `(c, c) ∈ (R ∖ Id)²` iff some `c' ≠ c` has `(c, c')` and `(c', c)` in
/// `R`, so that part of the diagonal is the top projection of
/// `(R ∖ Id) ∩ (R ∖ Id)⁻¹`.
pub fn condition_a(rts: &Rts, basis: Basis, goal: &Nfa) -> Result<Verdict> {
    check_goal(rts, goal)?;
    let r = rts.relation(basis)?;
    let reachable = r.image(rts.initial(), Direction::Post)?;
    let loops = rts.delta().diagonal()?;
    let x = r.minus_identity()?;
    let back_and_forth = x.intersect(&x.inverse())?;
    let two_step = back_and_forth.project(Track::Top);
    let diag = loops.union(&two_step)?;
    let Some(c) = ProductSearch::new(vec![&reachable, goal, &diag], vec![]).find(|_| true) else {
        return Ok(Verdict::fails());
    };
    if loops.accepts(&c)? {
        return Ok(Verdict::holds()
            .with_witness(Witness::lasso(vec![c], 0))
            .with_note("condition (a): goal configuration with a self-loop"));
    }
    let single = Nfa::from_word(rts.alphabet().clone(), &c);
    let c2 = back_and_forth
        .image(&single, Direction::Post)?
        .shortest_word()
        .expect("c is in the projection");
    Ok(Verdict::holds()
        .with_witness(Witness::pair(vec![c.clone(), c2, c]))
        .with_note(format!(
            "condition (a): goal configuration on a two-step {} cycle",
            basis.relation_name()
        )))
}

/// Condition (b): an infinite directed clique of goal configurations.
pub fn condition_b(rts: &Rts, basis: Basis, goal: &Nfa) -> Result<Verdict> {
    check_goal(rts, goal)?;
    clique::condition_b(rts, basis, goal)
}

/// Does some run (potential run, for the potential basis) visit the goal
/// infinitely often?
pub fn check_egf(rts: &Rts, goal: &Nfa, basis: Basis) -> Result<Verdict> {
    let a = condition_a(rts, basis, goal)?;
    if a.is_holds() {
        return Ok(a);
    }
    let b = condition_b(rts, basis, goal)?;
    if b.is_holds() {
        return Ok(b);
    }
    Ok(Verdict::fails())
}

/// Almost-sure reachability, decided slice by slice up to `max_length`.
pub fn check_as_f_bounded(rts: &Rts, goal: &Nfa, max_length: usize) -> Result<Verdict> {
    bounded(rts, goal, max_length, Property::Asf)
}

/// Sure reachability, decided slice by slice up to `max_length`.
pub fn check_af_bounded(rts: &Rts, goal: &Nfa, max_length: usize) -> Result<Verdict> {
    bounded(rts, goal, max_length, Property::Af)
}

/// Sure recurrent reachability, decided slice by slice up to `max_length`.
pub fn check_agf_bounded(rts: &Rts, goal: &Nfa, max_length: usize) -> Result<Verdict> {
    bounded(rts, goal, max_length, Property::Agf)
}

fn bounded(rts: &Rts, goal: &Nfa, max_length: usize, property: Property) -> Result<Verdict> {
    require_lp(rts)?;
    check_goal(rts, goal)?;
    for n in 0..=max_length {
        let at_n = rts.initial().intersect(&Nfa::exact_length(rts.alphabet().clone(), n))?;
        if at_n.is_empty() {
            continue;
        }
        let slice = match FiniteSlice::explore(rts, n, rts.limits().config_cap) {
            Ok(s) => s,
            Err(Error::ConfigCapExceeded { count, cap, .. }) => {
                let v = Verdict {
                    outcome: crate::verdict::Outcome::Unknown,
                    witness: None,
                    bound_used: n.checked_sub(1),
                    note: Some(format!(
                        "slice of length {n} exceeds the configuration cap ({count} > {cap})"
                    )),
                };
                return Ok(v);
            }
            Err(e) => return Err(e),
        };
        let result = slice.check(property, goal)?;
        if !result.holds {
            let w = result.witness.expect("oracle failures carry a witness");
            w.replay(rts.delta())?;
            w.starts_in(rts.initial())?;
            return Ok(Verdict::fails().with_witness(w).with_bound(n));
        }
    }
    if rts.initial().accepts_longer_than(max_length) {
        Ok(Verdict::unknown(max_length)
            .with_note("initial configurations exist beyond the bound"))
    } else {
        Ok(Verdict::holds().with_bound(max_length))
    }
}
