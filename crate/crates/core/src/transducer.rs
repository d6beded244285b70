//! Transducers: automata over the padded pair alphabet Σ# × Γ#.
//!
//! A transducer denotes the relation of word pairs whose convolution it
//! accepts. Words over the pair alphabet that are not convolutions (padding
//! followed by a real symbol on the same track) never denote a pair.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{convolve, deconvolve, Alphabet, Letter, PairAlphabet, PairSymbol, Word};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder, StateId};
use crate::search::ProductSearch;

#[derive(Clone, PartialEq, Eq)]
pub struct Transducer {
    pairs: PairAlphabet,
    nfa: Nfa,
}

/// Which track, counted from the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    Top,
    Bottom,
}

/// Direction of an image computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Post,
    Pre,
}

/// Result of a relation inclusion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationInclusion {
    Holds,
    Counterexample(Word, Word),
}

impl RelationInclusion {
    pub fn holds(&self) -> bool {
        matches!(self, RelationInclusion::Holds)
    }
}

// Padding modes along a convolution.
const LIVE: usize = 0;
const TOP_ENDED: usize = 1;
const BOTTOM_ENDED: usize = 2;

fn next_mode(mode: usize, p: PairSymbol) -> Option<usize> {
    match (mode, p.top.is_some(), p.bottom.is_some()) {
        (LIVE, true, true) => Some(LIVE),
        (LIVE | TOP_ENDED, false, true) => Some(TOP_ENDED),
        (LIVE | BOTTOM_ENDED, true, false) => Some(BOTTOM_ENDED),
        _ => None,
    }
}

impl Transducer {
    /// Wraps an automaton over the symbol table of `pairs`. Padding is not
    /// checked; see [`Transducer::validate_padding`].
    pub fn from_nfa(pairs: PairAlphabet, nfa: Nfa) -> Result<Self> {
        if nfa.alphabet().len() != pairs.len() {
            return Err(Error::AlphabetMismatch(format!(
                "automaton has {} letters, pair alphabet has {}",
                nfa.alphabet().len(),
                pairs.len()
            )));
        }
        let nfa = nfa.with_alphabet(pairs.symbol_table());
        Ok(Self { pairs, nfa })
    }

    /// Builder whose letters are pair-alphabet letters; see
    /// [`PairAlphabet::encode`].
    pub fn builder(pairs: &PairAlphabet) -> NfaBuilder {
        NfaBuilder::new(pairs.symbol_table())
    }

    /// Recognizes `{(w, w)}`; one state.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let pairs = PairAlphabet::new(alphabet.clone(), alphabet.clone());
        let mut b = NfaBuilder::with_states(pairs.symbol_table(), 1);
        for a in alphabet.letters() {
            b.add_transition(0, pairs.encode(PairSymbol::both(a, a)), 0);
        }
        b.set_initial(0);
        b.set_final(0, true);
        Self { nfa: b.build(), pairs }
    }

    /// Recognizes Σ* × Γ*.
    pub fn universal(top: &Alphabet, bottom: &Alphabet) -> Self {
        let pairs = PairAlphabet::new(top.clone(), bottom.clone());
        let mut b = NfaBuilder::with_states(pairs.symbol_table(), 3);
        for t in top.letters() {
            for d in bottom.letters() {
                b.add_transition(LIVE, pairs.encode(PairSymbol::both(t, d)), LIVE);
            }
        }
        for t in top.letters() {
            let l = pairs.encode(PairSymbol::new(Some(t), None));
            b.add_transition(LIVE, l, BOTTOM_ENDED);
            b.add_transition(BOTTOM_ENDED, l, BOTTOM_ENDED);
        }
        for d in bottom.letters() {
            let l = pairs.encode(PairSymbol::new(None, Some(d)));
            b.add_transition(LIVE, l, TOP_ENDED);
            b.add_transition(TOP_ENDED, l, TOP_ENDED);
        }
        b.set_initial(LIVE);
        for q in 0..3 {
            b.set_final(q, true);
        }
        Self { nfa: b.build(), pairs }
    }

    /// The empty relation.
    pub fn empty(top: &Alphabet, bottom: &Alphabet) -> Self {
        let pairs = PairAlphabet::new(top.clone(), bottom.clone());
        Self { nfa: Nfa::empty(pairs.symbol_table()), pairs }
    }

    /// Exactly the given pairs: a trie over their convolutions, trimmed.
    pub fn from_pairs<'w>(
        top: &Alphabet,
        bottom: &Alphabet,
        pairs_iter: impl IntoIterator<Item = (&'w [Letter], &'w [Letter])>,
    ) -> Self {
        let pairs = PairAlphabet::new(top.clone(), bottom.clone());
        let words: Vec<Word> = pairs_iter
            .into_iter()
            .map(|(u, w)| convolve(u, w).into_iter().map(|p| pairs.encode(p)).collect())
            .collect();
        let nfa = Nfa::from_words(pairs.symbol_table(), words.iter().map(Vec::as_slice)).trim();
        Self { pairs, nfa }
    }

    pub fn pairs(&self) -> &PairAlphabet {
        &self.pairs
    }

    pub fn top(&self) -> &Alphabet {
        &self.pairs.top
    }

    pub fn bottom(&self) -> &Alphabet {
        &self.pairs.bottom
    }

    /// The underlying automaton over the pair alphabet.
    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn num_states(&self) -> usize {
        self.nfa.num_states()
    }

    pub fn encode_pair(&self, u: &[Letter], w: &[Letter]) -> Word {
        convolve(u, w).into_iter().map(|p| self.pairs.encode(p)).collect()
    }

    pub fn decode_word(&self, word: &[Letter]) -> Option<(Word, Word)> {
        let symbols: Vec<PairSymbol> = word.iter().map(|&l| self.pairs.decode(l)).collect();
        deconvolve(&symbols)
    }

    pub fn accepts_pair(&self, u: &[Letter], w: &[Letter]) -> Result<bool> {
        if let Some(&l) = u.iter().find(|&&l| l >= self.top().len()) {
            return Err(Error::UnknownSymbol(format!("letter #{l} on the top track")));
        }
        if let Some(&l) = w.iter().find(|&&l| l >= self.bottom().len()) {
            return Err(Error::UnknownSymbol(format!("letter #{l} on the bottom track")));
        }
        self.nfa.accepts(&self.encode_pair(u, w))
    }

    /// Tracks swapped on every transition; same states.
    pub fn inverse(&self) -> Transducer {
        let pairs = PairAlphabet::new(self.bottom().clone(), self.top().clone());
        let nfa = self.nfa.map_letters(pairs.symbol_table(), |l| {
            Some(pairs.encode(self.pairs.decode(l).swapped()))
        });
        Transducer { pairs, nfa }
    }

    /// Projection onto one track. Letters padded on the kept track become
    /// silent moves and are removed by forward closure; the result has the
    /// same states.
    pub fn project(&self, track: Track) -> Nfa {
        let alphabet = match track {
            Track::Top => self.top().clone(),
            Track::Bottom => self.bottom().clone(),
        };
        let keep = |l: Letter| {
            let p = self.pairs.decode(l);
            match track {
                Track::Top => p.top,
                Track::Bottom => p.bottom,
            }
        };
        eliminate_silent(&self.nfa, alphabet, keep)
    }

    /// Post- or pre-image of a regular set; at most `n * l` states.
    pub fn image(&self, set: &Nfa, direction: Direction) -> Result<Nfa> {
        match direction {
            Direction::Post => self.post_image(set),
            Direction::Pre => self.inverse().post_image(set),
        }
    }

    fn post_image(&self, set: &Nfa) -> Result<Nfa> {
        if set.alphabet() != self.top() {
            return Err(Error::AlphabetMismatch(format!(
                "set over {:?}, relation reads {:?}",
                set.alphabet(),
                self.top()
            )));
        }
        // Product of `set` on the top track with the transducer; `set` idles
        // on top padding, which is only allowed from an accepting state.
        let mut b = NfaBuilder::new(self.pairs.symbol_table());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let intern = |b: &mut NfaBuilder,
                      index: &mut HashMap<(StateId, StateId), StateId>,
                      queue: &mut VecDeque<(StateId, StateId)>,
                      p: (StateId, StateId)| {
            *index.entry(p).or_insert_with(|| {
                let id = b.add_state();
                b.set_final(id, set.is_final(p.0) && self.nfa.is_final(p.1));
                queue.push_back(p);
                id
            })
        };
        for &p in set.initial() {
            for &q in self.nfa.initial() {
                let id = intern(&mut b, &mut index, &mut queue, (p, q));
                b.set_initial(id);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = index[&(p, q)];
            for &(l, q2) in self.nfa.edges(q) {
                match self.pairs.decode(l).top {
                    Some(a) => {
                        let targets: Vec<StateId> = set.successors(p, a).collect();
                        for p2 in targets {
                            let to = intern(&mut b, &mut index, &mut queue, (p2, q2));
                            b.add_transition(from, l, to);
                        }
                    }
                    None if set.is_final(p) => {
                        let to = intern(&mut b, &mut index, &mut queue, (p, q2));
                        b.add_transition(from, l, to);
                    }
                    None => {}
                }
            }
        }
        let product = Transducer { pairs: self.pairs.clone(), nfa: b.build() };
        Ok(product.project(Track::Bottom))
    }

    /// Join `self ∘ other`: pairs `(x, z)` with `(x, y)` in `self` and
    /// `(y, z)` in `other`. The product runs both transducers over reachable
    /// state pairs only, so the result has at most `l1 * l2` states.
    ///
    /// When the two outer words end before the middle word, acceptance in a
    /// product state `(q1, q2)` requires a remainder `y'` of the middle word
    /// with `(#, y')` accepted from `q1` and `(y', #)` accepted from `q2`.
    /// The denoted relation is exact for padding-valid inputs; the automaton
    /// may additionally accept words that are not convolutions (call
    /// [`Transducer::normalized`] to drop them).
    pub fn compose(&self, other: &Transducer) -> Result<Transducer> {
        if self.bottom() != other.top() {
            return Err(Error::AlphabetMismatch(format!(
                "middle alphabets differ: {:?} vs {:?}",
                self.bottom(),
                other.top()
            )));
        }
        let (t1, t2) = (&self.nfa, &other.nfa);
        let (p1, p2) = (&self.pairs, &other.pairs);
        let pairs = PairAlphabet::new(self.top().clone(), other.bottom().clone());
        let good = tail_acceptance(self, other);
        let (nt, nm, nb) = (self.top().len(), self.bottom().len(), other.bottom().len());

        let mut b = NfaBuilder::new(pairs.symbol_table());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let intern = |b: &mut NfaBuilder,
                      index: &mut HashMap<(StateId, StateId), StateId>,
                      queue: &mut VecDeque<(StateId, StateId)>,
                      q: (StateId, StateId)| {
            *index.entry(q).or_insert_with(|| {
                let id = b.add_state();
                b.set_final(id, good.contains(&q));
                queue.push_back(q);
                id
            })
        };
        for &q1 in t1.initial() {
            for &q2 in t2.initial() {
                let id = intern(&mut b, &mut index, &mut queue, (q1, q2));
                b.set_initial(id);
            }
        }
        let opt = |x: usize, n: usize| (x < n).then_some(x);
        while let Some((q1, q2)) = queue.pop_front() {
            let from = index[&(q1, q2)];
            for a in 0..=nt {
                for c in 0..=nb {
                    let (a, c) = (opt(a, nt), opt(c, nb));
                    if a.is_none() && c.is_none() {
                        continue;
                    }
                    let letter = pairs.encode(PairSymbol::new(a, c));
                    let mut targets: Vec<(StateId, StateId)> = Vec::new();
                    for m in 0..nm {
                        let l1 = p1.encode(PairSymbol::new(a, Some(m)));
                        let l2 = p2.encode(PairSymbol::new(Some(m), c));
                        for r1 in t1.successors(q1, l1) {
                            targets.extend(t2.successors(q2, l2).map(|r2| (r1, r2)));
                        }
                    }
                    match (a, c) {
                        (Some(_), Some(_)) => {
                            let l1 = p1.encode(PairSymbol::new(a, None));
                            let l2 = p2.encode(PairSymbol::new(None, c));
                            for r1 in t1.successors(q1, l1) {
                                targets.extend(t2.successors(q2, l2).map(|r2| (r1, r2)));
                            }
                        }
                        (None, Some(_)) if t1.is_final(q1) => {
                            let l2 = p2.encode(PairSymbol::new(None, c));
                            targets.extend(t2.successors(q2, l2).map(|r2| (q1, r2)));
                        }
                        (Some(_), None) if t2.is_final(q2) => {
                            let l1 = p1.encode(PairSymbol::new(a, None));
                            targets.extend(t1.successors(q1, l1).map(|r1| (r1, q2)));
                        }
                        _ => {}
                    }
                    for t in targets {
                        let to = intern(&mut b, &mut index, &mut queue, t);
                        b.add_transition(from, letter, to);
                    }
                }
            }
        }
        Ok(Transducer { pairs, nfa: b.build() })
    }

    /// Words `c` with `(c, c)` in the relation.
    pub fn diagonal(&self) -> Result<Nfa> {
        if self.top() != self.bottom() {
            return Err(Error::AlphabetMismatch("diagonal needs equal track alphabets".into()));
        }
        let id = Transducer::identity(self.top());
        let both = self.nfa.intersect(&id.nfa)?;
        Ok(Transducer { pairs: self.pairs.clone(), nfa: both }.project(Track::Top))
    }

    /// Intersection of the recognized languages, over the same pair alphabet.
    pub fn intersect(&self, other: &Transducer) -> Result<Transducer> {
        self.same_pairs(other)?;
        Ok(Transducer { pairs: self.pairs.clone(), nfa: self.nfa.intersect(&other.nfa)? })
    }

    pub fn union(&self, other: &Transducer) -> Result<Transducer> {
        self.same_pairs(other)?;
        Ok(Transducer { pairs: self.pairs.clone(), nfa: self.nfa.union(&other.nfa)? })
    }

    /// The relation minus the identity, `R ∖ Id`.
    pub fn minus_identity(&self) -> Result<Transducer> {
        if self.top() != self.bottom() {
            return Err(Error::AlphabetMismatch("identity needs equal track alphabets".into()));
        }
        let not_id = Transducer::identity(self.top()).nfa.complement()?;
        Ok(Transducer { pairs: self.pairs.clone(), nfa: self.nfa.intersect(&not_id)? })
    }

    fn same_pairs(&self, other: &Transducer) -> Result<()> {
        if self.pairs != other.pairs {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.pairs, other.pairs
            )));
        }
        Ok(())
    }

    pub fn trim(&self) -> Transducer {
        Transducer { pairs: self.pairs.clone(), nfa: self.nfa.trim() }
    }

    /// True iff no transition on an accepting path carries padding.
    pub fn is_length_preserving(&self) -> bool {
        let t = self.nfa.trim();
        (0..t.num_states())
            .all(|q| t.edges(q).iter().all(|&(l, _)| !self.pairs.decode(l).is_padded()))
    }

    /// Rejects a transducer with an accepting path that places a real symbol
    /// after padding on the same track.
    pub fn validate_padding(&self) -> Result<()> {
        let useful = self.nfa.useful_states();
        let mut seen = vec![[false; 3]; self.nfa.num_states()];
        let mut stack = Vec::new();
        for &q in self.nfa.initial() {
            if useful[q] {
                seen[q][LIVE] = true;
                stack.push((q, LIVE));
            }
        }
        while let Some((q, mode)) = stack.pop() {
            for &(l, t) in self.nfa.edges(q) {
                if !useful[t] {
                    continue;
                }
                let p = self.pairs.decode(l);
                let Some(m) = next_mode(mode, p) else {
                    let track = if mode == TOP_ENDED { "top" } else { "bottom" };
                    return Err(Error::Padding(format!(
                        "`{} {} {}` follows padding on the {track} track",
                        self.nfa.state_name(q),
                        self.pairs.render_symbol(p),
                        self.nfa.state_name(t)
                    )));
                };
                if !seen[t][m] {
                    seen[t][m] = true;
                    stack.push((t, m));
                }
            }
        }
        Ok(())
    }

    /// Language restricted to convolutions: product with the three padding
    /// modes, trimmed. At most `3 l` states; padding-valid.
    pub fn normalized(&self) -> Transducer {
        let checker = convolution_checker(&self.pairs);
        let nfa = self.nfa.intersect(&checker).expect("same pair alphabet").trim();
        Transducer { pairs: self.pairs.clone(), nfa }
    }

    /// Decides `R(self) ⊆ R(other)` on the fly. Words that are not
    /// convolutions are ignored on both sides.
    pub fn relation_includes(&self, other: &Transducer) -> Result<RelationInclusion> {
        self.same_pairs(other)?;
        let checker = convolution_checker(&self.pairs);
        let search = ProductSearch::new(vec![&self.nfa, &checker], vec![&other.nfa]);
        Ok(match search.find(|f| !f[0]) {
            None => RelationInclusion::Holds,
            Some(w) => {
                let (u, v) = self.decode_word(&w).expect("checker admits convolutions only");
                RelationInclusion::Counterexample(u, v)
            }
        })
    }

    /// Successors `w` of `u` (pairs `(u, w)` in the relation) in
    /// shortest-then-lexicographic order, at most `cap` of them, and whether
    /// more exist.
    pub fn successors(&self, u: &[Letter], cap: usize) -> Result<(Vec<Word>, bool)> {
        if self.is_length_preserving() {
            let words = self.lp_successors(u)?;
            let truncated = words.len() > cap;
            return Ok((words.into_iter().take(cap).collect(), truncated));
        }
        let single = Nfa::from_word(self.top().clone(), u);
        Ok(self.image(&single, Direction::Post)?.first_words(cap))
    }

    /// Equal-length successors of `u` in lexicographic order.
    pub fn lp_successors(&self, u: &[Letter]) -> Result<Vec<Word>> {
        if let Some(&l) = u.iter().find(|&&l| l >= self.top().len()) {
            return Err(Error::UnknownSymbol(format!("letter #{l}")));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(u.len());
        let start = self.nfa.initial().to_vec();
        self.lp_rec(u, &start, &mut prefix, &mut out);
        Ok(out)
    }

    fn lp_rec(&self, u: &[Letter], set: &[StateId], prefix: &mut Word, out: &mut Vec<Word>) {
        let i = prefix.len();
        if i == u.len() {
            if set.iter().any(|&q| self.nfa.is_final(q)) {
                out.push(prefix.clone());
            }
            return;
        }
        for b in self.bottom().letters() {
            let next = self.nfa.step(set, self.pairs.encode(PairSymbol::both(u[i], b)));
            if !next.is_empty() {
                prefix.push(b);
                self.lp_rec(u, &next, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// Three-state automaton accepting exactly the convolutions over `pairs`.
pub(crate) fn convolution_checker(pairs: &PairAlphabet) -> Nfa {
    let mut b = NfaBuilder::with_states(pairs.symbol_table(), 3);
    for mode in [LIVE, TOP_ENDED, BOTTOM_ENDED] {
        for l in 0..pairs.len() {
            if let Some(m) = next_mode(mode, pairs.decode(l)) {
                b.add_transition(mode, l, m);
            }
        }
        b.set_final(mode, true);
    }
    b.set_initial(LIVE);
    b.build()
}

/// State pairs `(q1, q2)` from which some remainder `y` of the middle word
/// has `(#, y)` accepted by `t1` from `q1` and `(y, #)` accepted by `t2` from
/// `q2`. Least fixpoint from the pairs of final states.
fn tail_acceptance(t1: &Transducer, t2: &Transducer) -> std::collections::HashSet<(StateId, StateId)> {
    let (a1, a2) = (&t1.nfa, &t2.nfa);
    let mut rev: HashMap<(StateId, StateId), Vec<(StateId, StateId)>> = HashMap::new();
    for q1 in 0..a1.num_states() {
        for &(l1, r1) in a1.edges(q1) {
            let p = t1.pairs.decode(l1);
            let (None, Some(m)) = (p.top, p.bottom) else { continue };
            let l2 = t2.pairs.encode(PairSymbol::new(Some(m), None));
            for q2 in 0..a2.num_states() {
                for r2 in a2.successors(q2, l2) {
                    rev.entry((r1, r2)).or_default().push((q1, q2));
                }
            }
        }
    }
    let mut good = std::collections::HashSet::new();
    let mut stack = Vec::new();
    for q1 in a1.finals() {
        for q2 in a2.finals() {
            good.insert((q1, q2));
            stack.push((q1, q2));
        }
    }
    while let Some(q) = stack.pop() {
        if let Some(preds) = rev.get(&q) {
            for &p in preds {
                if good.insert(p) {
                    stack.push(p);
                }
            }
        }
    }
    good
}

/// Removes silent moves by forward closure: `keep` maps a letter to its
/// output letter, or `None` for a silent move.
fn eliminate_silent(nfa: &Nfa, alphabet: Alphabet, keep: impl Fn(Letter) -> Option<Letter>) -> Nfa {
    let n = nfa.num_states();
    let closure: Vec<Vec<StateId>> = (0..n)
        .map(|q| {
            let mut seen = vec![false; n];
            seen[q] = true;
            let mut stack = vec![q];
            let mut out = vec![q];
            while let Some(p) = stack.pop() {
                for &(l, t) in nfa.edges(p) {
                    if keep(l).is_none() && !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                        out.push(t);
                    }
                }
            }
            out
        })
        .collect();
    let mut b = NfaBuilder::new(alphabet);
    for (q, reach) in closure.iter().enumerate() {
        b.add_named_state(nfa.state_name(q).to_string());
        b.set_final(q, reach.iter().any(|&p| nfa.is_final(p)));
    }
    for (q, reach) in closure.iter().enumerate() {
        for &p in reach {
            for &(l, t) in nfa.edges(p) {
                if let Some(a) = keep(l) {
                    b.add_transition(q, a, t);
                }
            }
        }
    }
    for &q in nfa.initial() {
        b.set_initial(q);
    }
    b.build()
}

impl fmt::Debug for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transducer {:?}", self.nfa)
    }
}
