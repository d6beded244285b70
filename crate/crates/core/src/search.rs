//! Breadth-first emptiness search over a synchronized product of NFAs.
//!
//! Positive components are tracked state by state, negative components by
//! the subset of states they can be in, built lazily. A node is accepting
//! when every positive component is in a final state and the caller's
//! predicate accepts the finality flags of the negative subsets. This is the
//! "guess the word letter by letter" search: complements are never built.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, Word};
use crate::nfa::{Nfa, StateId};

pub(crate) struct ProductSearch<'a> {
    positives: Vec<&'a Nfa>,
    negatives: Vec<&'a Nfa>,
}

struct Interner {
    ids: HashMap<Vec<StateId>, u32>,
    sets: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
}

impl Interner {
    fn new() -> Self {
        Self { ids: HashMap::new(), sets: Vec::new(), accepting: Vec::new() }
    }

    fn intern(&mut self, nfa: &Nfa, set: Vec<StateId>) -> u32 {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        let id = self.sets.len() as u32;
        self.accepting.push(set.iter().any(|&q| nfa.is_final(q)));
        self.sets.push(set.clone());
        self.ids.insert(set, id);
        id
    }
}

impl<'a> ProductSearch<'a> {
    pub fn new(positives: Vec<&'a Nfa>, negatives: Vec<&'a Nfa>) -> Self {
        debug_assert!(!positives.is_empty());
        let n = positives[0].alphabet().len();
        debug_assert!(positives.iter().chain(&negatives).all(|a| a.alphabet().len() == n));
        Self { positives, negatives }
    }

    /// Shortest (then lexicographically least) word accepted by every positive
    /// component whose negative-subset finality flags satisfy `accept`.
    pub fn find(&self, accept: impl Fn(&[bool]) -> bool) -> Option<Word> {
        let letters = self.positives[0].alphabet().len();
        let np = self.positives.len();
        let mut interners: Vec<Interner> = self.negatives.iter().map(|_| Interner::new()).collect();
        let mut index: HashMap<Box<[u32]>, usize> = HashMap::new();
        let mut nodes: Vec<Box<[u32]>> = Vec::new();
        let mut parent: Vec<Option<(usize, Letter)>> = Vec::new();
        let mut queue = VecDeque::new();

        let is_accepting = |key: &[u32], interners: &[Interner]| {
            let pos_ok = key[..np]
                .iter()
                .zip(&self.positives)
                .all(|(&q, a)| a.is_final(q as StateId));
            if !pos_ok {
                return false;
            }
            let flags: Vec<bool> = key[np..]
                .iter()
                .zip(interners)
                .map(|(&s, it)| it.accepting[s as usize])
                .collect();
            accept(&flags)
        };

        let neg_init: Vec<u32> = self
            .negatives
            .iter()
            .zip(interners.iter_mut())
            .map(|(a, it)| it.intern(a, a.initial().to_vec()))
            .collect();
        let pos_init: Vec<Vec<StateId>> = self.positives.iter().map(|a| a.initial().to_vec()).collect();
        for combo in cartesian(&pos_init) {
            let key: Box<[u32]> = combo
                .iter()
                .map(|&q| q as u32)
                .chain(neg_init.iter().copied())
                .collect();
            if index.contains_key(&key) {
                continue;
            }
            let id = nodes.len();
            index.insert(key.clone(), id);
            parent.push(None);
            if is_accepting(&key, &interners) {
                nodes.push(key);
                return Some(reconstruct(&parent, id));
            }
            nodes.push(key);
            queue.push_back(id);
        }

        while let Some(id) = queue.pop_front() {
            let key = nodes[id].clone();
            for letter in 0..letters {
                let mut pos_next = Vec::with_capacity(np);
                let mut dead = false;
                for (i, a) in self.positives.iter().enumerate() {
                    let succ: Vec<StateId> = a.successors(key[i] as StateId, letter).collect();
                    if succ.is_empty() {
                        dead = true;
                        break;
                    }
                    pos_next.push(succ);
                }
                if dead {
                    continue;
                }
                let mut neg_next = Vec::with_capacity(self.negatives.len());
                for (j, a) in self.negatives.iter().enumerate() {
                    let it = &mut interners[j];
                    let set = &it.sets[key[np + j] as usize];
                    let next = a.step(set, letter);
                    neg_next.push(it.intern(a, next));
                }
                for combo in cartesian(&pos_next) {
                    let next_key: Box<[u32]> = combo
                        .iter()
                        .map(|&q| q as u32)
                        .chain(neg_next.iter().copied())
                        .collect();
                    if index.contains_key(&next_key) {
                        continue;
                    }
                    let nid = nodes.len();
                    index.insert(next_key.clone(), nid);
                    parent.push(Some((id, letter)));
                    if is_accepting(&next_key, &interners) {
                        return Some(reconstruct(&parent, nid));
                    }
                    nodes.push(next_key);
                    queue.push_back(nid);
                }
            }
        }
        None
    }
}

fn reconstruct(parent: &[Option<(usize, Letter)>], mut id: usize) -> Word {
    let mut word = Vec::new();
    while let Some((p, l)) = parent[id] {
        word.push(l);
        id = p;
    }
    word.reverse();
    word
}

fn cartesian(choices: &[Vec<StateId>]) -> Vec<Vec<StateId>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for &q in options {
                let mut v = prefix.clone();
                v.push(q);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
