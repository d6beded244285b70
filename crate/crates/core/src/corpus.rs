//! Example systems compiled into the library.

use crate::bundle::{parse_rts_bundle_with, Resolver};
use crate::error::{Error, Result};
use crate::format::parse_nfa;
use crate::nfa::Nfa;
use crate::rts::Rts;

macro_rules! corpus_files {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../corpus/", $path)))),*]
    };
}

static FILES: &[(&str, &str)] = corpus_files![
    "herman-lp/herman-lp.rts",
    "herman-lp/init.nfa",
    "herman-lp/delta.t",
    "herman-lp/reach.t",
    "herman-lp/goals/one-token.nfa",
    "herman-lp/goals/one-token-pre.nfa",
    "herman-lp/goals/empty.nfa",
    "herman-lp/goals/all.nfa",
    "herman-grow/herman-grow.rts",
    "herman-grow/init.nfa",
    "herman-grow/delta.t",
    "herman-grow/goals/one-token.nfa",
    "herman-grow/goals/empty.nfa",
    "herman-grow/goals/all.nfa",
    "succ-walk/succ-walk.rts",
    "succ-walk/init.nfa",
    "succ-walk/delta.t",
    "succ-walk/reach.t",
    "succ-walk/goals/all.nfa",
    "succ-walk/goals/empty.nfa",
    "succ-walk/goals/a.nfa",
    "toggle/toggle.rts",
    "toggle/init.nfa",
    "toggle/delta.t",
    "toggle/reach.t",
    "toggle/goals/a.nfa",
    "toggle/goals/b.nfa",
    "toggle/goals/empty.nfa",
    "toggle/goals/all.nfa",
];

pub const SYSTEMS: [&str; 4] = ["herman-lp", "herman-grow", "succ-walk", "toggle"];

/// Contents of a bundled file, by path relative to the corpus root.
pub fn file(path: &str) -> Option<&'static str> {
    FILES.iter().find(|(p, _)| *p == path).map(|(_, t)| *t)
}

pub fn files() -> impl Iterator<Item = (&'static str, &'static str)> {
    FILES.iter().copied()
}

struct Embedded<'a> {
    system: &'a str,
}

impl Resolver for Embedded<'_> {
    fn read(&self, path: &str) -> Result<String> {
        let full = format!("{}/{path}", self.system);
        file(&full).map(str::to_string).ok_or_else(|| Error::Io {
            path: full.into(),
            source: std::io::Error::from(std::io::ErrorKind::NotFound),
        })
    }
}

fn unknown_system(name: &str) -> Error {
    Error::InvalidArgument(format!("no bundled system `{name}` (known: {})", SYSTEMS.join(", ")))
}

pub fn load(system: &str) -> Result<Rts> {
    let text = file(&format!("{system}/{system}.rts")).ok_or_else(|| unknown_system(system))?;
    parse_rts_bundle_with(text, &Embedded { system })
}

/// Names of the goal sets shipped with a system.
pub fn goals(system: &str) -> Vec<&'static str> {
    let prefix = format!("{system}/goals/");
    FILES
        .iter()
        .filter_map(|(p, _)| p.strip_prefix(prefix.as_str())?.strip_suffix(".nfa"))
        .collect()
}

pub fn goal(system: &str, name: &str) -> Result<Nfa> {
    let text = file(&format!("{system}/goals/{name}.nfa")).ok_or_else(|| {
        Error::InvalidArgument(format!("system `{system}` has no goal `{name}` (known: {})", goals(system).join(", ")))
    })?;
    parse_nfa(text)
}
