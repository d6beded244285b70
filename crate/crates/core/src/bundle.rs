//! RTS bundle files: a short manifest naming the automata of a system.
//!
//! ```text
//! rts
//! alphabet: < • ◦ >
//! initial: file:init.nfa
//! delta: file:delta.t
//! reach: file:reach.t
//! preach: file:preach.t
//! ```

use std::path::{Path, PathBuf};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::format::{parse_nfa, parse_transducer};
use crate::rts::Rts;
use crate::transducer::Transducer;

/// Source of the files a bundle refers to.
pub trait Resolver {
    fn read(&self, path: &str) -> Result<String>;
}

/// Resolves paths relative to a directory.
pub struct DirResolver {
    pub base: PathBuf,
}

impl Resolver for DirResolver {
    fn read(&self, path: &str) -> Result<String> {
        read_file(&self.base.join(path))
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

const KEYS: [&str; 5] = ["alphabet", "initial", "delta", "reach", "preach"];

/// Parses bundle text, loading the referenced files through `resolver`, and
/// validates the result.
pub fn parse_rts_bundle_with(text: &str, resolver: &dyn Resolver) -> Result<Rts> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split(';').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "rts")) => {}
        Some((n, _)) => return Err(Error::parse(n, "a bundle starts with `rts`")),
        None => return Err(Error::parse(1, "empty bundle")),
    }
    let mut values: [Option<(usize, &str)>; 5] = [None; 5];
    let mut last_key = 0;
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        let (k, v) = line.split_once(':').ok_or_else(|| Error::parse(n, "expected `key: value`"))?;
        let k = k.trim();
        let idx = KEYS.iter().position(|&x| x == k).ok_or_else(|| Error::parse(n, format!("unknown key `{k}`")))?;
        if values[idx].is_some() {
            return Err(Error::parse(n, format!("`{k}` given twice")));
        }
        if idx < last_key {
            return Err(Error::parse(n, format!("`{k}` is out of order")));
        }
        last_key = idx;
        values[idx] = Some((n, v.trim()));
    }
    let required = |i: usize| values[i].ok_or_else(|| Error::parse(last_line, format!("missing `{}:`", KEYS[i])));
    let (n, a) = required(0)?;
    let alphabet = Alphabet::new(a.split_whitespace()).map_err(|e| Error::parse(n, e.to_string()))?;

    let load = |i: usize| -> Result<String> {
        let (n, v) = values[i].expect("checked by caller");
        let path = v
            .strip_prefix("file:")
            .ok_or_else(|| Error::parse(n, format!("`{}` must be `file:<path>`", KEYS[i])))?;
        resolver.read(path.trim())
    };
    required(1)?;
    required(2)?;
    let initial = parse_nfa(&load(1)?)?;
    if *initial.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch("initial set differs from the bundle alphabet".into()));
    }
    let relation = |i: usize| -> Result<Transducer> {
        let t = parse_transducer(&load(i)?)?;
        if *t.top() != alphabet || *t.bottom() != alphabet {
            return Err(Error::AlphabetMismatch(format!("{} differs from the bundle alphabet", KEYS[i])));
        }
        Ok(t)
    };
    let mut rts = Rts::new(initial, relation(2)?)?;
    if values[3].is_some() {
        rts = rts.with_reach(relation(3)?)?;
    }
    if values[4].is_some() {
        rts = rts.with_preach(relation(4)?)?;
    }
    rts.validate().into_result()?;
    Ok(rts)
}

/// Loads a bundle from disk; referenced paths are relative to the bundle.
pub fn parse_rts_bundle(path: &Path) -> Result<Rts> {
    let text = read_file(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_rts_bundle_with(&text, &DirResolver { base })
}
