//! Line-oriented text format for automata and transducers.
//!
//! ```text
//! type: transducer
//! alphabet-top: a
//! alphabet-bottom: a
//! states: q0 q1
//! initial: q0
//! final: q1
//! q0 a/a q0
//! q0 #/a q1
//! ```
//!
//! `;` starts a comment. Headers appear in the order above; NFAs use a single
//! `alphabet:` line, and an optional `deterministic: true` line may follow the
//! alphabet.

use std::collections::{HashMap, HashSet};

use crate::abstraction::Interpretation;
use crate::alphabet::{is_token, Alphabet, PairAlphabet};
use crate::error::{Error, Result};
use crate::nfa::{Nfa, NfaBuilder};
use crate::transducer::Transducer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Nfa(Nfa),
    Transducer(Transducer),
}

impl Automaton {
    pub fn serialize(&self) -> String {
        match self {
            Automaton::Nfa(a) => serialize_nfa(a),
            Automaton::Transducer(t) => serialize_transducer(t),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Nfa(_) => "nfa",
            Automaton::Transducer(_) => "transducer",
        }
    }
}

struct Lines<'t> {
    inner: std::iter::Enumerate<std::str::Lines<'t>>,
    last: usize,
}

impl<'t> Lines<'t> {
    fn new(text: &'t str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next non-blank line with comments removed.
    fn next(&mut self) -> Option<(usize, &'t str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split(';').next().unwrap_or("").trim();
            self.last = i + 1;
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn header(&mut self, key: &str) -> Result<(usize, &'t str)> {
        let (n, line) = self
            .next()
            .ok_or_else(|| Error::parse(self.last + 1, format!("expected `{key}:`")))?;
        match line.split_once(':') {
            Some((k, v)) if k.trim() == key => Ok((n, v.trim())),
            Some((k, _)) => Err(Error::parse(n, format!("expected `{key}:`, found `{}:`", k.trim()))),
            None => Err(Error::parse(n, format!("expected `{key}:`"))),
        }
    }
}

struct Header {
    alphabet: Alphabet,
    bottom: Option<Alphabet>,
    deterministic: bool,
    states: Vec<String>,
    index: HashMap<String, usize>,
    initial: Vec<usize>,
    finals: Vec<usize>,
}

fn alphabet_line(n: usize, value: &str) -> Result<Alphabet> {
    Alphabet::new(value.split_whitespace()).map_err(|e| Error::parse(n, e.to_string()))
}

fn state_list(n: usize, value: &str, index: &HashMap<String, usize>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for s in value.split_whitespace() {
        let q = *index.get(s).ok_or_else(|| Error::parse(n, format!("unknown state `{s}`")))?;
        if out.contains(&q) {
            return Err(Error::parse(n, format!("state `{s}` listed twice")));
        }
        out.push(q);
    }
    Ok(out)
}

fn parse_header(lines: &mut Lines) -> Result<Header> {
    let (n, kind) = lines.header("type")?;
    let transducer = match kind {
        "nfa" => false,
        "transducer" => true,
        other => return Err(Error::parse(n, format!("unknown automaton type `{other}`"))),
    };
    let (alphabet, bottom) = if transducer {
        let (n, top) = lines.header("alphabet-top")?;
        let top = alphabet_line(n, top)?;
        let (n, bottom) = lines.header("alphabet-bottom")?;
        (top, Some(alphabet_line(n, bottom)?))
    } else {
        let (n, a) = lines.header("alphabet")?;
        (alphabet_line(n, a)?, None)
    };

    let (mut n, mut line) = lines.next().ok_or_else(|| Error::parse(lines.last + 1, "expected `states:`"))?;
    let mut deterministic = false;
    if let Some(("deterministic", v)) = line.split_once(':').map(|(k, v)| (k.trim(), v.trim())) {
        deterministic = match v {
            "true" => true,
            "false" => false,
            _ => return Err(Error::parse(n, format!("expected `true` or `false`, found `{v}`"))),
        };
        (n, line) = lines.next().ok_or_else(|| Error::parse(lines.last + 1, "expected `states:`"))?;
    }
    let states_value = match line.split_once(':') {
        Some((k, v)) if k.trim() == "states" => v.trim(),
        Some((k, _)) => return Err(Error::parse(n, format!("unexpected key `{}`", k.trim()))),
        None => return Err(Error::parse(n, "expected `states:`")),
    };
    let mut states = Vec::new();
    let mut index = HashMap::new();
    for s in states_value.split_whitespace() {
        if !is_token(s) {
            return Err(Error::parse(n, format!("invalid state name `{s}`")));
        }
        if index.insert(s.to_string(), states.len()).is_some() {
            return Err(Error::parse(n, format!("state `{s}` declared twice")));
        }
        states.push(s.to_string());
    }
    let (n, init) = lines.header("initial")?;
    let initial = state_list(n, init, &index)?;
    let (n, fin) = lines.header("final")?;
    let finals = state_list(n, fin, &index)?;
    Ok(Header { alphabet, bottom, deterministic, states, index, initial, finals })
}

/// Parses either kind of automaton. Transducers are checked for padding
/// validity; a `deterministic: true` header is verified.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut lines = Lines::new(text);
    let h = parse_header(&mut lines)?;
    let pairs = h.bottom.clone().map(|b| PairAlphabet::new(h.alphabet.clone(), b));
    let table = match &pairs {
        Some(p) => p.symbol_table(),
        None => h.alphabet.clone(),
    };
    let mut b = NfaBuilder::new(table);
    for s in &h.states {
        b.add_named_state(s.clone());
    }
    for &q in &h.initial {
        b.set_initial(q);
    }
    for &q in &h.finals {
        b.set_final(q, true);
    }
    let mut seen = HashSet::new();
    while let Some((n, line)) = lines.next() {
        if let Some((k, _)) = line.split_once(':') {
            return Err(Error::parse(n, format!("unexpected key `{}`", k.trim())));
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [from, sym, to] = parts[..] else {
            return Err(Error::parse(n, "a transition has the form `state symbol state`"));
        };
        let state = |s: &str| h.index.get(s).copied().ok_or_else(|| Error::parse(n, format!("unknown state `{s}`")));
        let (p, q) = (state(from)?, state(to)?);
        let letter = match &pairs {
            Some(pa) => pa.encode(pa.parse_symbol(sym).map_err(|e| Error::parse(n, e.to_string()))?),
            None => h.alphabet.letter(sym).ok_or_else(|| Error::parse(n, format!("unknown symbol `{sym}`")))?,
        };
        if !seen.insert((p, letter, q)) {
            return Err(Error::parse(n, format!("duplicate transition `{line}`")));
        }
        b.add_transition(p, letter, q);
    }
    let nfa = b.build();
    if h.deterministic && !nfa.is_deterministic() {
        return Err(Error::NotDeterministic(
            "declared `deterministic: true` but has several initial states or successors".into(),
        ));
    }
    match pairs {
        None => Ok(Automaton::Nfa(nfa)),
        Some(pa) => {
            let t = Transducer::from_nfa(pa, nfa)?;
            t.validate_padding()?;
            Ok(Automaton::Transducer(t))
        }
    }
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    match parse_automaton(text)? {
        Automaton::Nfa(a) => Ok(a),
        Automaton::Transducer(_) => Err(Error::parse(1, "expected `type: nfa`")),
    }
}

pub fn parse_transducer(text: &str) -> Result<Transducer> {
    match parse_automaton(text)? {
        Automaton::Transducer(t) => Ok(t),
        Automaton::Nfa(_) => Err(Error::parse(1, "expected `type: transducer`")),
    }
}

/// Parses an interpretation; the file must declare `deterministic: true`.
pub fn parse_interpretation(text: &str) -> Result<Interpretation> {
    let mut lines = Lines::new(text);
    let h = parse_header(&mut lines)?;
    if !h.deterministic {
        return Err(Error::NotDeterministic("interpretation files must declare `deterministic: true`".into()));
    }
    Interpretation::new(parse_transducer(text)?)
}

/// State names usable in the text format: the stored names if they are valid
/// and distinct, otherwise `q0, q1, ...`.
fn printable_names(nfa: &Nfa) -> Vec<String> {
    let names = nfa.state_names();
    let mut seen = HashSet::new();
    if names.iter().all(|s| is_token(s) && seen.insert(s.as_str())) {
        names.to_vec()
    } else {
        (0..names.len()).map(|i| format!("q{i}")).collect()
    }
}

fn write_body(out: &mut String, nfa: &Nfa, deterministic: bool) {
    let names = printable_names(nfa);
    if deterministic {
        out.push_str("deterministic: true\n");
    }
    let join = |qs: &mut dyn Iterator<Item = usize>| qs.map(|q| names[q].as_str()).collect::<Vec<_>>().join(" ");
    push_line(out, "states:", &names.join(" "));
    push_line(out, "initial:", &join(&mut nfa.initial().iter().copied()));
    push_line(out, "final:", &join(&mut nfa.finals()));
    for q in 0..nfa.num_states() {
        for &(l, t) in nfa.edges(q) {
            out.push_str(&format!("{} {} {}\n", names[q], nfa.alphabet().symbol(l), names[t]));
        }
    }
}

fn push_line(out: &mut String, key: &str, value: &str) {
    out.push_str(key);
    if !value.is_empty() {
        out.push(' ');
        out.push_str(value);
    }
    out.push('\n');
}

pub fn serialize_nfa(nfa: &Nfa) -> String {
    let mut out = String::from("type: nfa\n");
    push_line(&mut out, "alphabet:", &nfa.alphabet().symbols().join(" "));
    write_body(&mut out, nfa, false);
    out
}

pub fn serialize_transducer(t: &Transducer) -> String {
    serialize_pairs(t, false)
}

pub fn serialize_interpretation(v: &Interpretation) -> String {
    serialize_pairs(v.transducer(), true)
}

fn serialize_pairs(t: &Transducer, deterministic: bool) -> String {
    let mut out = String::from("type: transducer\n");
    push_line(&mut out, "alphabet-top:", &t.top().symbols().join(" "));
    push_line(&mut out, "alphabet-bottom:", &t.bottom().symbols().join(" "));
    write_body(&mut out, t.nfa(), deterministic);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUCC: &str = "\
; a^n -> a^(n+1)
type: transducer
alphabet-top: a
alphabet-bottom: a
states: q0 q1
initial: q0
final: q1
q0 a/a q0
q0 #/a q1
";

    #[test]
    fn succ_file() {
        let t = parse_transducer(SUCC).unwrap();
        assert!(t.accepts_pair(&[0, 0], &[0, 0, 0]).unwrap());
        assert!(!t.accepts_pair(&[0], &[0]).unwrap());
        assert!(t.accepts_pair(&[], &[0]).unwrap());
        assert_eq!(parse_transducer(&serialize_transducer(&t)).unwrap(), t);
    }

    #[test]
    fn padding_violation() {
        let text = "type: transducer\nalphabet-top: a\nalphabet-bottom: a\nstates: q0 q1 q2\ninitial: q0\nfinal: q2\nq0 a/# q1\nq1 a/a q2\n";
        assert!(matches!(parse_automaton(text), Err(Error::Padding(_))));
    }

    #[test]
    fn malformed_files() {
        let dup = "type: nfa\nalphabet: a\nstates: p\ninitial: p\nfinal: p\np a p\np a p\n";
        assert!(matches!(parse_automaton(dup), Err(Error::Parse { line: 7, .. })));
        let order = "type: nfa\nstates: p\nalphabet: a\n";
        assert!(matches!(parse_automaton(order), Err(Error::Parse { line: 2, .. })));
        let unknown = "type: nfa\nalphabet: a\nstates: p\ninitial: p\nfinal: p\ncolour: red\n";
        assert!(matches!(parse_automaton(unknown), Err(Error::Parse { line: 6, .. })));
        let bad_state = "type: nfa\nalphabet: a\nstates: p\ninitial: r\nfinal:\n";
        assert!(matches!(parse_automaton(bad_state), Err(Error::Parse { line: 4, .. })));
        let bad_sym = "type: nfa\nalphabet: a\nstates: p\ninitial: p\nfinal:\np b p\n";
        assert!(matches!(parse_automaton(bad_sym), Err(Error::Parse { line: 6, .. })));
    }

    #[test]
    fn determinism_header() {
        let text = "type: nfa\nalphabet: a\ndeterministic: true\nstates: p q\ninitial: p\nfinal: q\np a p\np a q\n";
        assert!(matches!(parse_automaton(text), Err(Error::NotDeterministic(_))));
        assert!(parse_automaton(&text.replace("true", "false")).is_ok());
        assert!(matches!(parse_interpretation(SUCC), Err(Error::NotDeterministic(_))));
    }

    #[test]
    fn empty_lists_round_trip() {
        let e = Nfa::empty(Alphabet::new(["a", "b"]).unwrap());
        let text = serialize_nfa(&e);
        assert_eq!(parse_nfa(&text).unwrap(), e);
    }
}
