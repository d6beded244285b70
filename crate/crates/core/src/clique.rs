//! Infinite directed cliques of goal configurations.
//!
//! `T` is the product of the relation `R` with `Σ* × goal`. Nodes of the
//! graph are pairs of `T`-states; `(q1, q2) -> (q1', q2')` when some words
//! `c`, `d` with `|c| = |d| > 0` have `(#, c)` leading from `q1` to a final
//! state, `(c, d)` from `q2` to `q1'` and `(d, d)` from `q2` to `q2'`. A
//! clique exists iff a cycle is reachable from a node `(δ(α0, β0),
//! δ(β0, β0))` with `α0` initial and `|α0| = |β0|`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, PairSymbol, Word};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder, StateId};
use crate::oracle::tarjan;
use crate::rts::{Basis, Rts};
use crate::transducer::Transducer;
use crate::verdict::{Verdict, Witness};

pub(crate) fn condition_b(rts: &Rts, basis: Basis, goal: &Nfa) -> Result<Verdict> {
    let r = rts.relation(basis)?;
    let t = goal_product(r, goal);
    let graph = CliqueGraph::explore(rts, r, &t)?;
    let Some((origin, edges)) = graph.lasso() else {
        return Ok(Verdict::fails());
    };
    let (alpha0, beta0) = origin;
    let mut configurations = vec![alpha0.clone()];
    let mut prefix = beta0.clone();
    for (c, d) in &edges {
        let mut e = prefix.clone();
        e.extend_from_slice(c);
        configurations.push(e);
        prefix.extend_from_slice(d);
    }
    let witness = Witness::clique_prefix(configurations);
    validate(rts, r, goal, &witness)?;
    Ok(Verdict::holds().with_witness(witness).with_note(format!(
        "condition (b): infinite clique under {}, prefix of {} configurations",
        basis.relation_name(),
        edges.len() + 1
    )))
}

fn validate(rts: &Rts, r: &Transducer, goal: &Nfa, w: &Witness) -> Result<()> {
    w.starts_in(rts.initial())?;
    w.replay(r)?;
    let cs = &w.configurations;
    for c in &cs[1..] {
        if !goal.accepts(c)? {
            return Err(Error::InvalidWitness("clique member outside the goal".into()));
        }
    }
    for i in 0..cs.len() {
        if cs[i + 1..].contains(&cs[i]) {
            return Err(Error::InvalidWitness("clique members repeat".into()));
        }
    }
    Ok(())
}

/// `R ∩ (Σ* × goal)` as an automaton over the pair alphabet of `R`.
fn goal_product(r: &Transducer, goal: &Nfa) -> Nfa {
    let a = r.nfa();
    let pairs = r.pairs();
    let mut b = NfaBuilder::new(pairs.symbol_table());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let intern = |b: &mut NfaBuilder,
                  index: &mut HashMap<(StateId, StateId), StateId>,
                  queue: &mut VecDeque<(StateId, StateId)>,
                  p: (StateId, StateId)| {
        *index.entry(p).or_insert_with(|| {
            let id = b.add_state();
            b.set_final(id, a.is_final(p.0) && goal.is_final(p.1));
            queue.push_back(p);
            id
        })
    };
    for &q in a.initial() {
        for &g in goal.initial() {
            let id = intern(&mut b, &mut index, &mut queue, (q, g));
            b.set_initial(id);
        }
    }
    while let Some((q, g)) = queue.pop_front() {
        let from = index[&(q, g)];
        for &(l, q2) in a.edges(q) {
            match pairs.decode(l).bottom {
                Some(y) => {
                    let targets: Vec<StateId> = goal.successors(g, y).collect();
                    for g2 in targets {
                        let to = intern(&mut b, &mut index, &mut queue, (q2, g2));
                        b.add_transition(from, l, to);
                    }
                }
                None if goal.is_final(g) => {
                    let to = intern(&mut b, &mut index, &mut queue, (q2, g));
                    b.add_transition(from, l, to);
                }
                None => {}
            }
        }
    }
    b.build()
}

type Node = (StateId, StateId);
type WordPair = (Word, Word);

enum Origin {
    Initial(Word, Word),
    Edge(usize),
}

struct CliqueGraph {
    origin: Vec<Origin>,
    adj: Vec<Vec<usize>>,
    labels: HashMap<(usize, usize), (Word, Word)>,
}

impl CliqueGraph {
    fn explore(rts: &Rts, r: &Transducer, t: &Nfa) -> Result<Self> {
        let cap = rts.limits().state_cap;
        let pairs = r.pairs();
        let n = rts.alphabet().len();
        let both = |x: Letter, y: Letter| pairs.encode(PairSymbol::both(x, y));
        let below = |y: Letter| pairs.encode(PairSymbol::new(None, Some(y)));

        let mut index: HashMap<Node, usize> = HashMap::new();
        let mut nodes: Vec<Node> = Vec::new();
        let mut origin: Vec<Origin> = Vec::new();

        // Initial nodes: run I on α0, T on (α0, β0) and T on (β0, β0).
        let init = rts.initial();
        let mut seen: HashMap<(StateId, StateId, StateId), usize> = HashMap::new();
        let mut trail: Vec<(Option<usize>, Letter, Letter)> = Vec::new();
        let mut queue = VecDeque::new();
        for &i in init.initial() {
            for &s1 in t.initial() {
                for &s2 in t.initial() {
                    if seen.insert((i, s1, s2), trail.len()).is_none() {
                        queue.push_back(((i, s1, s2), trail.len()));
                        trail.push((None, 0, 0));
                    }
                }
            }
        }
        while let Some(((i, s1, s2), id)) = queue.pop_front() {
            if init.is_final(i) && !index.contains_key(&(s1, s2)) {
                let (alpha, beta) = unwind(&trail, id);
                index.insert((s1, s2), nodes.len());
                nodes.push((s1, s2));
                origin.push(Origin::Initial(alpha, beta));
            }
            for x in 0..n {
                for y in 0..n {
                    for i2 in init.successors(i, x) {
                        for u in t.successors(s1, both(x, y)) {
                            for v in t.successors(s2, both(y, y)) {
                                if seen.len() >= cap {
                                    return Err(Error::StateCapExceeded { cap });
                                }
                                if let Entry::Vacant(e) = seen.entry((i2, u, v)) {
                                    e.insert(trail.len());
                                    queue.push_back(((i2, u, v), trail.len()));
                                    trail.push((Some(id), x, y));
                                }
                            }
                        }
                    }
                }
            }
        }

        // Edges, explored breadth-first from the initial nodes.
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut labels = HashMap::new();
        let mut next = 0;
        while next < nodes.len() {
            let (q1, q2) = nodes[next];
            let mut out = Vec::new();
            let mut seen: HashMap<(StateId, StateId, StateId), usize> = HashMap::new();
            let mut trail: Vec<(Option<usize>, Letter, Letter)> = vec![(None, 0, 0)];
            let mut queue = VecDeque::from([((q1, q2, q2), 0usize)]);
            while let Some(((u, v, w), id)) = queue.pop_front() {
                for x in 0..n {
                    for y in 0..n {
                        for u2 in t.successors(u, below(x)) {
                            for v2 in t.successors(v, both(x, y)) {
                                for w2 in t.successors(w, both(y, y)) {
                                    if seen.contains_key(&(u2, v2, w2)) {
                                        continue;
                                    }
                                    if seen.len() >= cap {
                                        return Err(Error::StateCapExceeded { cap });
                                    }
                                    let tid = trail.len();
                                    seen.insert((u2, v2, w2), tid);
                                    trail.push((Some(id), x, y));
                                    queue.push_back(((u2, v2, w2), tid));
                                    if !t.is_final(u2) {
                                        continue;
                                    }
                                    let target = (v2, w2);
                                    let to = match index.get(&target) {
                                        Some(&k) => k,
                                        None => {
                                            let k = nodes.len();
                                            index.insert(target, k);
                                            nodes.push(target);
                                            origin.push(Origin::Edge(next));
                                            k
                                        }
                                    };
                                    if !out.contains(&to) {
                                        out.push(to);
                                        labels.insert((next, to), unwind(&trail, tid));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            adj.push(out);
            next += 1;
        }
        Ok(Self { origin, adj, labels })
    }

    /// Origin words of the initial node and the edge labels of a path that
    /// reaches a cycle and goes once around it.
    fn lasso(&self) -> Option<(WordPair, Vec<WordPair>)> {
        let (comp_of, comps) = tarjan(&self.adj, &vec![true; self.adj.len()]);
        let v = (0..self.adj.len()).find(|&v| {
            let k = comp_of[v];
            comps[k].len() > 1 || self.adj[v].contains(&v)
        })?;
        let mut path = vec![v];
        let mut cur = v;
        let start = loop {
            match &self.origin[cur] {
                Origin::Initial(a, b) => break (a.clone(), b.clone()),
                Origin::Edge(p) => {
                    cur = *p;
                    path.push(cur);
                }
            }
        };
        path.reverse();
        let all = vec![true; self.adj.len()];
        let cycle = crate::oracle::cycle_through(&self.adj, v, &all)?;
        path.extend(cycle.into_iter().skip(1));
        path.push(v);
        let edges = path.windows(2).map(|w| self.labels[&(w[0], w[1])].clone()).collect();
        Some((start, edges))
    }
}

fn unwind(trail: &[(Option<usize>, Letter, Letter)], mut id: usize) -> (Word, Word) {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    while let (Some(p), x, y) = trail[id] {
        xs.push(x);
        ys.push(y);
        id = p;
    }
    xs.reverse();
    ys.reverse();
    (xs, ys)
}
