//! Explicit-state ground truth: per-length slices of a length-preserving
//! system, their bottom SCCs, and the qualitative properties decided on them.

mod scc;
mod simulate;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::rts::Rts;
use crate::transducer::Transducer;
use crate::verdict::Witness;

pub use scc::tarjan;
pub(crate) use scc::cycle_through;
pub use simulate::{simulate, SimulationConfig, SimulationStats};

/// Properties decided on a slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// Some run reaches the goal.
    Ef,
    /// Some run visits the goal infinitely often.
    Egf,
    /// Every run visits the goal.
    Af,
    /// Every run visits the goal infinitely often.
    Agf,
    /// The goal is reached almost surely.
    Asf,
    /// The goal is visited infinitely often almost surely.
    Asgf,
    /// Runs terminate almost surely.
    Ast,
    /// No reachable configuration is terminating.
    Df,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Ef,
        Property::Egf,
        Property::Af,
        Property::Agf,
        Property::Asf,
        Property::Asgf,
        Property::Ast,
        Property::Df,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Ef => "ef",
            Property::Egf => "egf",
            Property::Af => "af",
            Property::Agf => "agf",
            Property::Asf => "asf",
            Property::Asgf => "asgf",
            Property::Ast => "ast",
            Property::Df => "df",
        }
    }

    pub fn parse(s: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == s.to_ascii_lowercase())
    }
}

/// Result of an explicit check: whether the property holds and a witness
/// for the existential side (a path or lasso).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// The configurations of one length with their Δ-edges and SCCs.
#[derive(Clone, Debug)]
pub struct FiniteSlice {
    pub length: usize,
    configurations: Vec<Word>,
    index: HashMap<Word, usize>,
    edges: Vec<Vec<usize>>,
    initial: Vec<usize>,
    comp_of: Vec<usize>,
    sccs: Vec<Vec<usize>>,
    bottom: Vec<bool>,
}

impl FiniteSlice {
    /// Every configuration of length `n`.
    pub fn build(rts: &Rts, n: usize, config_cap: usize) -> Result<Self> {
        if !rts.is_length_preserving() {
            return Err(Error::NotLengthPreserving);
        }
        let count = rts.alphabet().count_words(n);
        if count > config_cap as u128 {
            return Err(Error::ConfigCapExceeded { length: n, count, cap: config_cap });
        }
        let configurations: Vec<Word> = rts.alphabet().words_of_length(n).collect();
        let index: HashMap<Word, usize> =
            configurations.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut edges = Vec::with_capacity(configurations.len());
        for c in &configurations {
            let succ = rts.delta().lp_successors(c)?;
            edges.push(succ.iter().map(|s| index[s]).collect());
        }
        let mut initial = Vec::new();
        for (i, c) in configurations.iter().enumerate() {
            if rts.initial().accepts(c)? {
                initial.push(i);
            }
        }
        Ok(Self::finish(n, configurations, index, edges, initial))
    }

    /// Only the configurations reachable from the initial ones of length `n`.
    pub fn explore(rts: &Rts, n: usize, config_cap: usize) -> Result<Self> {
        if !rts.is_length_preserving() {
            return Err(Error::NotLengthPreserving);
        }
        let mut configurations: Vec<Word> = rts.initial().words_of_length(n);
        if configurations.len() > config_cap {
            return Err(Error::ConfigCapExceeded {
                length: n,
                count: configurations.len() as u128,
                cap: config_cap,
            });
        }
        let mut index: HashMap<Word, usize> =
            configurations.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let initial: Vec<usize> = (0..configurations.len()).collect();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < configurations.len() {
            let succ = rts.delta().lp_successors(&configurations[next])?;
            let mut out = Vec::with_capacity(succ.len());
            for s in succ {
                let id = match index.get(&s) {
                    Some(&id) => id,
                    None => {
                        if configurations.len() >= config_cap {
                            return Err(Error::ConfigCapExceeded {
                                length: n,
                                count: configurations.len() as u128 + 1,
                                cap: config_cap,
                            });
                        }
                        let id = configurations.len();
                        index.insert(s.clone(), id);
                        configurations.push(s);
                        id
                    }
                };
                out.push(id);
            }
            edges.push(out);
            next += 1;
        }
        Ok(Self::finish(n, configurations, index, edges, initial))
    }

    fn finish(
        length: usize,
        configurations: Vec<Word>,
        index: HashMap<Word, usize>,
        edges: Vec<Vec<usize>>,
        initial: Vec<usize>,
    ) -> Self {
        let (comp_of, sccs) = tarjan(&edges, &vec![true; edges.len()]);
        let bottom = sccs
            .iter()
            .enumerate()
            .map(|(k, comp)| comp.iter().all(|&v| edges[v].iter().all(|&w| comp_of[w] == k)))
            .collect();
        Self { length, configurations, index, edges, initial, comp_of, sccs, bottom }
    }

    pub fn len(&self) -> usize {
        self.configurations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configurations.is_empty()
    }

    pub fn configurations(&self) -> &[Word] {
        &self.configurations
    }

    pub fn configuration(&self, i: usize) -> &Word {
        &self.configurations[i]
    }

    pub fn index_of(&self, c: &[Letter]) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn initial_indices(&self) -> &[usize] {
        &self.initial
    }

    pub fn sccs(&self) -> &[Vec<usize>] {
        &self.sccs
    }

    pub fn scc_of(&self, i: usize) -> usize {
        self.comp_of[i]
    }

    /// Indices of the bottom SCCs.
    pub fn bsccs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.sccs.len()).filter(|&k| self.bottom[k])
    }

    pub fn is_bottom(&self, scc: usize) -> bool {
        self.bottom[scc]
    }

    /// A single configuration with no successor.
    pub fn is_trivial(&self, scc: usize) -> bool {
        let comp = &self.sccs[scc];
        comp.len() == 1 && !self.edges[comp[0]].contains(&comp[0])
    }

    pub fn is_terminating(&self, i: usize) -> bool {
        self.edges[i].is_empty()
    }

    pub fn in_bscc(&self, i: usize) -> bool {
        self.bottom[self.comp_of[i]]
    }

    /// Whether `i` lies on a cycle (its SCC is non-trivial as a graph).
    pub fn on_cycle(&self, i: usize) -> bool {
        let comp = &self.sccs[self.comp_of[i]];
        comp.len() > 1 || self.edges[i].contains(&i)
    }

    /// Configurations reachable from the initial ones.
    pub fn reachable(&self) -> Vec<bool> {
        scc::reachable(&self.edges, &self.initial, &vec![true; self.len()])
    }

    /// Configurations reachable from `i`.
    pub fn reachable_from(&self, i: usize) -> Vec<bool> {
        scc::reachable(&self.edges, &[i], &vec![true; self.len()])
    }

    /// Membership of every configuration in `goal`.
    pub fn mask(&self, goal: &Nfa) -> Result<Vec<bool>> {
        self.configurations.iter().map(|c| goal.accepts(c)).collect()
    }

    fn words(&self, path: &[usize]) -> Vec<Word> {
        path.iter().map(|&i| self.configurations[i].clone()).collect()
    }

    /// Decides `property` on this slice for `goal ∩ Σⁿ`.
    pub fn check(&self, property: Property, goal: &Nfa) -> Result<OracleResult> {
        let in_goal = self.mask(goal)?;
        Ok(self.check_mask(property, &in_goal))
    }

    pub fn check_mask(&self, property: Property, in_goal: &[bool]) -> OracleResult {
        let all = vec![true; self.len()];
        let not_goal: Vec<bool> = in_goal.iter().map(|g| !g).collect();
        let holds = |w| OracleResult { holds: true, witness: w };
        let fails = |w| OracleResult { holds: false, witness: w };
        match property {
            Property::Ef => {
                match scc::bfs_path(&self.edges, &self.initial, &all, |v| in_goal[v]) {
                    Some(p) => holds(Some(Witness::path(self.words(&p)))),
                    None => fails(None),
                }
            }
            Property::Egf => {
                let target = |v: usize| in_goal[v] && self.on_cycle(v);
                match scc::bfs_path(&self.edges, &self.initial, &all, target) {
                    Some(p) => holds(Some(self.lasso(p, &all))),
                    None => fails(None),
                }
            }
            Property::Af => match self.avoiding_run(&self.initial, &not_goal) {
                Some(w) => fails(Some(w)),
                None => holds(None),
            },
            Property::Agf => {
                // Runs from any reachable configuration: a path there, then a
                // goal-avoiding run.
                let reach = self.reachable();
                let sources: Vec<usize> = (0..self.len()).filter(|&v| reach[v]).collect();
                match self.avoiding_run(&sources, &not_goal) {
                    Some(w) => {
                        let start = w.configurations[0].clone();
                        let s = self.index[&start];
                        let prefix = scc::bfs_path(&self.edges, &self.initial, &all, |v| v == s)
                            .expect("reachable");
                        fails(Some(self.prepend(&prefix, w)))
                    }
                    None => holds(None),
                }
            }
            Property::Asf => {
                let target = |v: usize| {
                    let k = self.comp_of[v];
                    self.bottom[k] && self.sccs[k].iter().all(|&u| !in_goal[u])
                };
                match scc::bfs_path(&self.edges, &self.initial, &not_goal, target) {
                    Some(p) => fails(Some(Witness::path(self.words(&p)))),
                    None => holds(None),
                }
            }
            Property::Asgf => {
                let target = |v: usize| {
                    let k = self.comp_of[v];
                    self.bottom[k]
                        && (self.is_trivial(k) || self.sccs[k].iter().all(|&u| !in_goal[u]))
                };
                match scc::bfs_path(&self.edges, &self.initial, &all, target) {
                    Some(p) => fails(Some(Witness::path(self.words(&p)))),
                    None => holds(None),
                }
            }
            Property::Ast => {
                let target = |v: usize| {
                    let k = self.comp_of[v];
                    self.bottom[k] && !self.is_trivial(k)
                };
                match scc::bfs_path(&self.edges, &self.initial, &all, target) {
                    Some(p) => fails(Some(Witness::path(self.words(&p)))),
                    None => holds(None),
                }
            }
            Property::Df => {
                match scc::bfs_path(&self.edges, &self.initial, &all, |v| self.is_terminating(v)) {
                    Some(p) => fails(Some(Witness::path(self.words(&p)))),
                    None => holds(None),
                }
            }
        }
    }

    /// A run from `sources` that stays inside `allowed` forever or until it
    /// terminates: a lasso, or a path ending in a terminating configuration.
    fn avoiding_run(&self, sources: &[usize], allowed: &[bool]) -> Option<Witness> {
        let (comp_of, comps) = tarjan(&self.edges, allowed);
        let cyclic = |v: usize| {
            let k = comp_of[v];
            k != usize::MAX && (comps[k].len() > 1 || self.edges[v].contains(&v))
        };
        let target = |v: usize| self.is_terminating(v) || cyclic(v);
        let path = scc::bfs_path(&self.edges, sources, allowed, target)?;
        let end = *path.last().expect("nonempty");
        if self.is_terminating(end) {
            Some(Witness::path(self.words(&path)))
        } else {
            Some(self.lasso(path, allowed))
        }
    }

    /// Extends a path ending on a cycle to a lasso through that cycle.
    fn lasso(&self, mut path: Vec<usize>, allowed: &[bool]) -> Witness {
        let end = path.pop().expect("nonempty");
        let loop_start = path.len();
        path.extend(scc::cycle_through(&self.edges, end, allowed).expect("on a cycle"));
        Witness::lasso(self.words(&path), loop_start)
    }

    fn prepend(&self, prefix: &[usize], w: Witness) -> Witness {
        let shift = prefix.len() - 1;
        let mut configurations = self.words(&prefix[..shift]);
        configurations.extend(w.configurations);
        Witness {
            kind: w.kind,
            configurations,
            loop_start: w.loop_start.map(|k| k + shift),
        }
    }

    /// Reflexive-transitive closure of the edges: for every configuration,
    /// the sorted indices reachable from it.
    pub fn closure(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                let r = self.reachable_from(i);
                (0..self.len()).filter(|&j| r[j]).collect()
            })
            .collect()
    }

    /// The closure as word pairs.
    pub fn closure_pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for (i, targets) in self.closure().into_iter().enumerate() {
            for j in targets {
                out.push((self.configurations[i].clone(), self.configurations[j].clone()));
            }
        }
        out
    }

    /// Text dump: one `c -> c'` line per edge, then the bottom SCCs.
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "; length {}", self.length);
        for (i, succ) in self.edges.iter().enumerate() {
            for &j in succ {
                let _ = writeln!(
                    out,
                    "{} -> {}",
                    alphabet.render(&self.configurations[i]),
                    alphabet.render(&self.configurations[j])
                );
            }
        }
        let _ = writeln!(out, "bsccs:");
        for k in self.bsccs() {
            let members: Vec<String> =
                self.sccs[k].iter().map(|&i| alphabet.render(&self.configurations[i])).collect();
            let kind = if self.is_trivial(k) { "trivial" } else { "non-trivial" };
            let _ = writeln!(out, "{kind}: {}", members.join(" | "));
        }
        out
    }
}

/// Slice of every configuration of length `n`.
pub fn build_slice(rts: &Rts, n: usize, config_cap: usize) -> Result<FiniteSlice> {
    FiniteSlice::build(rts, n, config_cap)
}

/// Decides `property` at length `n` by explicit enumeration.
pub fn oracle_check(slice: &FiniteSlice, property: Property, goal: &Nfa) -> Result<OracleResult> {
    slice.check(property, goal)
}

/// Exact closure of a slice as word pairs.
pub fn slice_closure(slice: &FiniteSlice) -> Vec<(Word, Word)> {
    slice.closure_pairs()
}

/// A transducer accepting exactly the given equal-length pairs.
pub fn relation_to_transducer(alphabet: &Alphabet, pairs: &[(Word, Word)]) -> Result<Transducer> {
    if pairs.iter().any(|(u, w)| u.len() != w.len()) {
        return Err(Error::NotLengthPreserving);
    }
    Ok(Transducer::from_pairs(
        alphabet,
        alphabet,
        pairs.iter().map(|(u, w)| (u.as_slice(), w.as_slice())),
    ))
}
