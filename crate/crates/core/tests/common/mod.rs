//! Brute-force explicit semantics and random generators shared by the
//! integration tests. Nothing here uses the library's slice or SCC code.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use rmc_core::{Alphabet, Nfa, NfaBuilder, PairAlphabet, PairSymbol, Rts, Transducer, Word};

pub fn all_words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// A finite transition graph with its initial configurations.
pub struct Explicit {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub succ: Vec<Vec<usize>>,
    pub initial: Vec<usize>,
}

impl Explicit {
    /// Every configuration of length `n`; edges by testing every pair
    /// against the transducer.
    pub fn brute(rts: &Rts, n: usize) -> Self {
        let words = all_words(rts.alphabet().len(), n);
        let succ = words
            .iter()
            .map(|u| {
                (0..words.len())
                    .filter(|&j| rts.delta().accepts_pair(u, &words[j]).unwrap())
                    .collect()
            })
            .collect();
        let initial = (0..words.len()).filter(|&i| rts.initial().accepts(&words[i]).unwrap()).collect();
        Self::new(words, succ, initial)
    }

    /// Closure of `initial` under a successor function.
    pub fn from_fn(initial: Vec<Word>, step: impl Fn(&Word) -> Vec<Word>) -> Self {
        let mut words = initial.clone();
        let mut index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut succ = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let mut out = Vec::new();
            for s in step(&words[i]) {
                let id = *index.entry(s.clone()).or_insert_with(|| {
                    words.push(s);
                    words.len() - 1
                });
                out.push(id);
            }
            out.sort_unstable();
            out.dedup();
            succ.push(out);
            i += 1;
        }
        let n0 = initial.len();
        Self::new(words, succ, (0..n0).collect())
    }

    fn new(words: Vec<Word>, succ: Vec<Vec<usize>>, initial: Vec<usize>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self { words, index, succ, initial }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn mask(&self, set: &Nfa) -> Vec<bool> {
        self.words.iter().map(|w| set.accepts(w).unwrap()).collect()
    }

    fn bfs(&self, sources: &[usize], allowed: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if allowed(s) && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if allowed(w) && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Reflexive reachability from `i`.
    pub fn reach_from(&self, i: usize) -> Vec<bool> {
        self.bfs(&[i], |_| true)
    }

    pub fn reachable(&self) -> Vec<bool> {
        self.bfs(&self.initial, |_| true)
    }

    /// Can `i` return to itself in at least one step?
    pub fn on_cycle(&self, i: usize) -> bool {
        let r = self.bfs(&self.succ[i], |_| true);
        r[i]
    }

    pub fn terminating(&self, i: usize) -> bool {
        self.succ[i].is_empty()
    }

    /// Everything reachable from `i` can reach `i` back.
    pub fn in_bottom(&self, i: usize) -> bool {
        let r = self.reach_from(i);
        (0..self.len()).filter(|&j| r[j]).all(|j| self.reach_from(j)[i])
    }

    pub fn ef(&self, goal: &[bool]) -> bool {
        let r = self.reachable();
        (0..self.len()).any(|i| r[i] && goal[i])
    }

    pub fn egf(&self, goal: &[bool]) -> bool {
        let r = self.reachable();
        (0..self.len()).any(|i| r[i] && goal[i] && self.on_cycle(i))
    }

    pub fn df(&self) -> bool {
        let r = self.reachable();
        (0..self.len()).all(|i| !r[i] || !self.terminating(i))
    }

    /// Every reachable bottom SCC is non-trivial and meets the goal.
    pub fn asgf(&self, goal: &[bool]) -> bool {
        let r = self.reachable();
        (0..self.len()).filter(|&i| r[i] && self.in_bottom(i)).all(|i| {
            let scc = self.reach_from(i);
            !self.terminating(i) && (0..self.len()).any(|j| scc[j] && goal[j])
        })
    }

    /// Every reachable bottom SCC is a single terminating configuration.
    pub fn ast(&self) -> bool {
        let r = self.reachable();
        (0..self.len()).filter(|&i| r[i] && self.in_bottom(i)).all(|i| self.terminating(i))
    }

    /// Greatest set of non-goal configurations from which a goal-avoiding
    /// maximal run starts.
    pub fn avoiding(&self, goal: &[bool]) -> Vec<bool> {
        let mut x: Vec<bool> = goal.iter().map(|g| !g).collect();
        loop {
            let next: Vec<bool> = (0..self.len())
                .map(|i| x[i] && (self.terminating(i) || self.succ[i].iter().any(|&j| x[j])))
                .collect();
            if next == x {
                return x;
            }
            x = next;
        }
    }

    pub fn af(&self, goal: &[bool]) -> bool {
        let a = self.avoiding(goal);
        self.initial.iter().all(|&i| !a[i])
    }

    pub fn agf(&self, goal: &[bool]) -> bool {
        let a = self.avoiding(goal);
        let r = self.reachable();
        (0..self.len()).all(|i| !r[i] || !a[i])
    }

    /// Every configuration reachable while avoiding the goal can still
    /// reach the goal.
    pub fn asf(&self, goal: &[bool]) -> bool {
        let before = self.bfs(&self.initial, |v| !goal[v]);
        (0..self.len()).filter(|&i| before[i]).all(|i| {
            let r = self.reach_from(i);
            (0..self.len()).any(|j| r[j] && goal[j])
        })
    }

    /// Reflexive-transitive closure as word pairs.
    pub fn closure_pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let r = self.reach_from(i);
            for (j, w) in self.words.iter().enumerate() {
                if r[j] {
                    out.push((self.words[i].clone(), w.clone()));
                }
            }
        }
        out
    }
}

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

pub fn random_nfa(rng: &mut impl Rng, al: &Alphabet, max_states: usize, density: f64) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut b = NfaBuilder::with_states(al.clone(), n);
    for q in 0..n {
        for a in al.letters() {
            for t in 0..n {
                if rng.gen_bool(density) {
                    b.add_transition(q, a, t);
                }
            }
        }
        if rng.gen_bool(0.35) {
            b.set_final(q, true);
        }
    }
    b.set_initial(0);
    if n > 1 && rng.gen_bool(0.3) {
        b.set_initial(rng.gen_range(1..n));
    }
    b.build()
}

/// Random transducer; `padded` allows letters with padding.
pub fn random_transducer(
    rng: &mut impl Rng,
    top: &Alphabet,
    bottom: &Alphabet,
    max_states: usize,
    density: f64,
    padded: bool,
) -> Transducer {
    let pairs = PairAlphabet::new(top.clone(), bottom.clone());
    let n = rng.gen_range(1..=max_states);
    let mut b = Transducer::builder(&pairs);
    for _ in 0..n {
        b.add_state();
    }
    for q in 0..n {
        for l in 0..pairs.len() {
            if !padded && pairs.decode(l).is_padded() {
                continue;
            }
            for t in 0..n {
                if rng.gen_bool(density) {
                    b.add_transition(q, l, t);
                }
            }
        }
        if rng.gen_bool(0.4) {
            b.set_final(q, true);
        }
    }
    b.set_initial(0);
    Transducer::from_nfa(pairs, b.build()).unwrap()
}

/// A random length-preserving system over 1 to 3 letters.
pub fn random_lp_rts(rng: &mut impl Rng) -> (Rts, Nfa) {
    let al = alphabet(rng.gen_range(1..=3));
    let delta = random_transducer(rng, &al, &al, 6, 0.18, false);
    let initial = random_nfa(rng, &al, 3, 0.4);
    let goal = random_nfa(rng, &al, 3, 0.4);
    (Rts::new(initial, delta).unwrap(), goal)
}

/// Pairs of words with a padded symbol sequence, for exhaustive checks.
pub fn pair_symbols(pairs: &PairAlphabet) -> Vec<PairSymbol> {
    (0..pairs.len()).map(|l| pairs.decode(l)).collect()
}

/// Herman moves written directly from the example: a token moves to a
/// neighbouring cell, swallowing a token already there.
pub fn herman_moves(c: &Word) -> Vec<Word> {
    // Letters: 0 = <, 1 = •, 2 = ◦, 3 = >
    let cells = &c[1..c.len() - 1];
    let mut out = Vec::new();
    for i in 0..cells.len() {
        if cells[i] != 1 {
            continue;
        }
        for j in [i.wrapping_sub(1), i + 1] {
            if j < cells.len() {
                let mut next = cells.to_vec();
                next[i] = 2;
                next[j] = 1;
                let mut w = vec![0];
                w.extend(next);
                w.push(3);
                out.push(w);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn herman_initial(cells: usize) -> Vec<Word> {
    all_words(2, cells)
        .into_iter()
        .map(|w| w.into_iter().map(|x| x + 1).collect::<Word>())
        .filter(|w| w.contains(&1))
        .map(|w| {
            let mut c = vec![0];
            c.extend(w);
            c.push(3);
            c
        })
        .collect()
}

pub fn tokens(c: &Word) -> usize {
    c.iter().filter(|&&x| x == 1).count()
}
