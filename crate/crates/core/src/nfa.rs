//! Nondeterministic finite automata and the Boolean operations on them.
//!
//! State-count guarantees: union has `n1 + n2` states, intersection at most
//! `n1 * n2` (reachable pairs only), complement at most `2^n` (reachable
//! subsets, including the empty sink when it is reachable).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::search::ProductSearch;

pub type StateId = usize;

/// Default limit on the number of subset states a determinization may create.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    // Sorted and deduplicated per state.
    edges: Vec<Vec<(Letter, StateId)>>,
    initial: Vec<StateId>,
    finals: Vec<bool>,
}

/// Incremental construction of an [`Nfa`].
pub struct NfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    edges: Vec<Vec<(Letter, StateId)>>,
    initial: BTreeSet<StateId>,
    finals: Vec<bool>,
}

impl NfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        Self { alphabet, names: Vec::new(), edges: Vec::new(), initial: BTreeSet::new(), finals: Vec::new() }
    }

    pub fn with_states(alphabet: Alphabet, n: usize) -> Self {
        let mut b = Self::new(alphabet);
        for _ in 0..n {
            b.add_state();
        }
        b
    }

    pub fn add_state(&mut self) -> StateId {
        let id = self.names.len();
        self.add_named_state(format!("q{id}"))
    }

    pub fn add_named_state(&mut self, name: impl Into<String>) -> StateId {
        let id = self.names.len();
        self.names.push(name.into());
        self.edges.push(Vec::new());
        self.finals.push(false);
        id
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn add_transition(&mut self, from: StateId, letter: Letter, to: StateId) {
        debug_assert!(letter < self.alphabet.len());
        self.edges[from].push((letter, to));
    }

    pub fn has_transition(&self, from: StateId, letter: Letter, to: StateId) -> bool {
        self.edges[from].contains(&(letter, to))
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial.insert(q);
    }

    pub fn set_final(&mut self, q: StateId, accepting: bool) {
        self.finals[q] = accepting;
    }

    pub fn build(mut self) -> Nfa {
        for e in &mut self.edges {
            e.sort_unstable();
            e.dedup();
        }
        Nfa {
            alphabet: self.alphabet,
            names: self.names,
            edges: self.edges,
            initial: self.initial.into_iter().collect(),
            finals: self.finals,
        }
    }
}

/// Result of an inclusion check `L(A) ⊆ L(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    /// A shortest word in `L(A) \ L(B)`.
    Counterexample(Word),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }

    pub fn counterexample(&self) -> Option<&Word> {
        match self {
            Inclusion::Holds => None,
            Inclusion::Counterexample(w) => Some(w),
        }
    }
}

impl Nfa {
    /// The automaton with no states.
    pub fn empty(alphabet: Alphabet) -> Self {
        NfaBuilder::new(alphabet).build()
    }

    /// One accepting state with a self-loop on every letter.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut b = NfaBuilder::with_states(alphabet.clone(), 1);
        for l in alphabet.letters() {
            b.add_transition(0, l, 0);
        }
        b.set_initial(0);
        b.set_final(0, true);
        b.build()
    }

    pub fn from_word(alphabet: Alphabet, word: &[Letter]) -> Self {
        Self::from_words(alphabet, std::iter::once(word))
    }

    /// Trie-shaped automaton for a finite set of words.
    pub fn from_words<'w>(alphabet: Alphabet, words: impl IntoIterator<Item = &'w [Letter]>) -> Self {
        let mut b = NfaBuilder::with_states(alphabet, 1);
        b.set_initial(0);
        let mut children: HashMap<(StateId, Letter), StateId> = HashMap::new();
        for w in words {
            let mut q = 0;
            for &l in w {
                q = match children.get(&(q, l)) {
                    Some(&next) => next,
                    None => {
                        let next = b.add_state();
                        b.add_transition(q, l, next);
                        children.insert((q, l), next);
                        next
                    }
                };
            }
            b.set_final(q, true);
        }
        b.build()
    }

    /// All words of length exactly `n`.
    pub fn exact_length(alphabet: Alphabet, n: usize) -> Self {
        let mut b = NfaBuilder::with_states(alphabet.clone(), n + 1);
        for i in 0..n {
            for l in alphabet.letters() {
                b.add_transition(i, l, i + 1);
            }
        }
        b.set_initial(0);
        b.set_final(n, true);
        b.build()
    }

    /// All words longer than `n`.
    pub fn longer_than(alphabet: Alphabet, n: usize) -> Self {
        let mut b = NfaBuilder::with_states(alphabet.clone(), n + 2);
        for i in 0..=n {
            for l in alphabet.letters() {
                b.add_transition(i, l, i + 1);
            }
        }
        for l in alphabet.letters() {
            b.add_transition(n + 1, l, n + 1);
        }
        b.set_initial(0);
        b.set_final(n + 1, true);
        b.build()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    /// Outgoing transitions of `q`, sorted by letter then target.
    pub fn edges(&self, q: StateId) -> &[(Letter, StateId)] {
        &self.edges[q]
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, q: StateId, letter: Letter) -> impl Iterator<Item = StateId> + '_ {
        let e = &self.edges[q];
        let start = e.partition_point(|&(l, _)| l < letter);
        e[start..].iter().take_while(move |&&(l, _)| l == letter).map(|&(_, t)| t)
    }

    /// Successor set of a sorted state set.
    pub fn step(&self, set: &[StateId], letter: Letter) -> Vec<StateId> {
        let mut out: Vec<StateId> = set.iter().flat_map(|&q| self.successors(q, letter)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_word(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&l| l >= self.alphabet.len()) {
            Some(l) => Err(Error::UnknownSymbol(format!("letter #{l}"))),
            None => Ok(()),
        }
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        self.check_word(word)?;
        let mut set = self.initial.clone();
        for &l in word {
            if set.is_empty() {
                return Ok(false);
            }
            set = self.step(&set, l);
        }
        Ok(set.iter().any(|&q| self.finals[q]))
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Shortest accepted word; ties broken by alphabet order.
    pub fn shortest_word(&self) -> Option<Word> {
        ProductSearch::new(vec![self], vec![]).find(|_| true)
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self.edges.iter().all(|e| e.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn is_complete(&self) -> bool {
        !self.initial.is_empty()
            && self.edges.iter().all(|e| {
                let mut letters: Vec<Letter> = e.iter().map(|&(l, _)| l).collect();
                letters.dedup();
                letters.len() == self.alphabet.len()
            })
    }

    fn same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Disjoint union; exactly `n1 + n2` states.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let offset = self.num_states();
        let mut b = NfaBuilder::with_states(self.alphabet.clone(), offset + other.num_states());
        for (shift, a) in [(0, self), (offset, other)] {
            for q in 0..a.num_states() {
                for &(l, t) in a.edges(q) {
                    b.add_transition(q + shift, l, t + shift);
                }
                b.set_final(q + shift, a.is_final(q));
            }
            for &q in a.initial() {
                b.set_initial(q + shift);
            }
        }
        Ok(b.build())
    }

    /// Product over reachable state pairs; at most `n1 * n2` states.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.same_alphabet(other)?;
        let mut b = NfaBuilder::new(self.alphabet.clone());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |b: &mut NfaBuilder, queue: &mut VecDeque<(StateId, StateId)>, p: (StateId, StateId)| {
            *index.entry(p).or_insert_with(|| {
                let id = b.add_state();
                b.set_final(id, self.is_final(p.0) && other.is_final(p.1));
                queue.push_back(p);
                id
            })
        };
        for &p in &self.initial {
            for &q in &other.initial {
                let id = intern(&mut b, &mut queue, (p, q));
                b.set_initial(id);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = intern(&mut b, &mut queue, (p, q));
            for &(l, p2) in self.edges(p) {
                let targets: Vec<StateId> = other.successors(q, l).collect();
                for q2 in targets {
                    let to = intern(&mut b, &mut queue, (p2, q2));
                    b.add_transition(from, l, to);
                }
            }
        }
        Ok(b.build())
    }

    /// Complete DFA by subset construction over reachable subsets.
    pub fn determinize(&self, cap: usize) -> Result<Nfa> {
        let mut b = NfaBuilder::new(self.alphabet.clone());
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut sets: Vec<Vec<StateId>> = Vec::new();
        let start = self.initial.clone();
        let id = b.add_state();
        b.set_initial(id);
        b.set_final(id, start.iter().any(|&q| self.finals[q]));
        index.insert(start.clone(), id);
        sets.push(start);
        let mut next_id = 0;
        while next_id < sets.len() {
            let set = sets[next_id].clone();
            for l in self.alphabet.letters() {
                let target = self.step(&set, l);
                let to = match index.get(&target) {
                    Some(&t) => t,
                    None => {
                        if sets.len() >= cap {
                            return Err(Error::StateCapExceeded { cap });
                        }
                        let t = b.add_state();
                        b.set_final(t, target.iter().any(|&q| self.finals[q]));
                        index.insert(target.clone(), t);
                        sets.push(target);
                        t
                    }
                };
                b.add_transition(next_id, l, to);
            }
            next_id += 1;
        }
        Ok(b.build())
    }

    /// Complement with the default subset-state cap.
    pub fn complement(&self) -> Result<Nfa> {
        self.complement_capped(DEFAULT_STATE_CAP)
    }

    /// Complement by subset construction and final-set inversion. The result
    /// is deterministic and complete with at most `2^n` states.
    pub fn complement_capped(&self, cap: usize) -> Result<Nfa> {
        let mut dfa = self.determinize(cap)?;
        for f in dfa.finals.iter_mut() {
            *f = !*f;
        }
        Ok(dfa)
    }

    pub(crate) fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<StateId> = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &(_, t) in self.edges(q) {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub(crate) fn backward_reachable(&self) -> Vec<bool> {
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); self.num_states()];
        for q in 0..self.num_states() {
            for &(_, t) in self.edges(q) {
                rev[t].push(q);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Useful states: reachable from an initial state and co-reachable to a
    /// final one.
    pub fn useful_states(&self) -> Vec<bool> {
        let fwd = self.forward_reachable();
        let bwd = self.backward_reachable();
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }

    /// Restriction to useful states, renumbered in order. Names are kept.
    pub fn trim(&self) -> Nfa {
        let keep = self.useful_states();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut b = NfaBuilder::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = b.add_named_state(self.names[q].clone());
                b.set_final(map[q], self.finals[q]);
            }
        }
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            for &(l, t) in self.edges(q) {
                if keep[t] {
                    b.add_transition(map[q], l, map[t]);
                }
            }
        }
        for &q in &self.initial {
            if keep[q] {
                b.set_initial(map[q]);
            }
        }
        b.build()
    }

    /// Whether some accepted word is longer than `n`.
    pub fn accepts_longer_than(&self, n: usize) -> bool {
        let longer = Nfa::longer_than(self.alphabet.clone(), n);
        ProductSearch::new(vec![self, &longer], vec![]).find(|_| true).is_some()
    }

    /// Accepted words of length `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        // can[k][q]: q reaches a final state in exactly k steps.
        let mut can = vec![self.finals.clone()];
        for k in 1..=n {
            let prev = &can[k - 1];
            let row = (0..self.num_states())
                .map(|q| self.edges(q).iter().any(|&(_, t)| prev[t]))
                .collect();
            can.push(row);
        }
        let mut out = Vec::new();
        let start: Vec<StateId> = self.initial.iter().copied().filter(|&q| can[n][q]).collect();
        let mut prefix = Vec::with_capacity(n);
        self.enumerate_rec(&start, n, &can, &mut prefix, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        set: &[StateId],
        remaining: usize,
        can: &[Vec<bool>],
        prefix: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if set.is_empty() {
            return;
        }
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for l in self.alphabet.letters() {
            let next: Vec<StateId> =
                self.step(set, l).into_iter().filter(|&q| can[remaining - 1][q]).collect();
            if !next.is_empty() {
                prefix.push(l);
                self.enumerate_rec(&next, remaining - 1, can, prefix, out);
                prefix.pop();
            }
        }
    }

    /// The first `cap` accepted words in shortest-then-lexicographic order,
    /// and whether further words exist.
    pub fn first_words(&self, cap: usize) -> (Vec<Word>, bool) {
        let trimmed = self.trim();
        if trimmed.initial.is_empty() {
            return (Vec::new(), false);
        }
        let max_len = trimmed.longest_word_length();
        let mut out = Vec::new();
        let mut len = 0;
        loop {
            if let Some(m) = max_len {
                if len > m {
                    return (out, false);
                }
            }
            for w in trimmed.words_of_length(len) {
                if out.len() == cap {
                    return (out, true);
                }
                out.push(w);
            }
            len += 1;
        }
    }

    /// Length of the longest accepted word, or `None` when the language is
    /// infinite. Must be called on a trimmed automaton.
    fn longest_word_length(&self) -> Option<usize> {
        // Longest path in a DAG; a cycle among useful states means infinite.
        let n = self.num_states();
        let mut indeg = vec![0usize; n];
        for q in 0..n {
            for &(_, t) in self.edges(q) {
                indeg[t] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<StateId> = (0..n).filter(|&q| indeg[q] == 0).collect();
        while let Some(q) = stack.pop() {
            order.push(q);
            for &(_, t) in self.edges(q) {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut dist: Vec<Option<usize>> = vec![None; n];
        for &q in &self.initial {
            dist[q] = Some(0);
        }
        let mut best = 0;
        for &q in &order {
            let Some(d) = dist[q] else { continue };
            if self.finals[q] {
                best = best.max(d);
            }
            for &(_, t) in self.edges(q) {
                dist[t] = Some(dist[t].map_or(d + 1, |x| x.max(d + 1)));
            }
        }
        Some(best)
    }

    /// Same automaton over a different alphabet with the same number of
    /// letters (used to reinterpret pair-alphabet automata).
    pub(crate) fn with_alphabet(&self, alphabet: Alphabet) -> Nfa {
        debug_assert_eq!(alphabet.len(), self.alphabet.len());
        Nfa { alphabet, ..self.clone() }
    }

    pub(crate) fn map_letters(&self, alphabet: Alphabet, f: impl Fn(Letter) -> Option<Letter>) -> Nfa {
        let mut b = NfaBuilder::new(alphabet);
        for q in 0..self.num_states() {
            b.add_named_state(self.names[q].clone());
            b.set_final(q, self.finals[q]);
        }
        for q in 0..self.num_states() {
            for &(l, t) in self.edges(q) {
                if let Some(l2) = f(l) {
                    b.add_transition(q, l2, t);
                }
            }
        }
        for &q in &self.initial {
            b.set_initial(q);
        }
        b.build()
    }
}

/// Decides `L(a) ⊆ L(b)` on the fly: `a` is explored state by state and `b`
/// through lazily built subsets, so `b`'s complement is never materialized.
pub fn includes(a: &Nfa, b: &Nfa) -> Result<Inclusion> {
    a.same_alphabet(b)?;
    Ok(match ProductSearch::new(vec![a], vec![b]).find(|f| !f[0]) {
        None => Inclusion::Holds,
        Some(w) => Inclusion::Counterexample(w),
    })
}

impl fmt::Debug for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Nfa over {:?}", self.alphabet)?;
        writeln!(f, "  initial: {:?}", self.initial)?;
        writeln!(f, "  final: {:?}", self.finals().collect::<Vec<_>>())?;
        for q in 0..self.num_states() {
            for &(l, t) in self.edges(q) {
                writeln!(f, "  {} {} {}", self.names[q], self.alphabet.symbol(l), self.names[t])?;
            }
        }
        Ok(())
    }
}
