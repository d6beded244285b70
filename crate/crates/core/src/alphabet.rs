//! Symbol tables, words, and the padded pair alphabet used by transducers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Letter = usize;

/// A configuration: a finite sequence of letters over one alphabet.
pub type Word = Vec<Letter>;

/// The reserved padding symbol.
pub const PADDING: &str = "#";

/// Characters allowed in state names and alphabet symbols.
pub fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| {
            c.is_ascii_alphanumeric() || matches!(c, '_' | '<' | '>' | '•' | '◦' | '(' | ')' | '-')
        })
}

/// An ordered finite set of symbols. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if !is_token(s) {
                return Err(Error::InvalidAlphabet(format!("`{s}` is not a valid symbol")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self::raw(symbols))
    }

    /// Builds a symbol table without validating the names. Used for derived
    /// alphabets such as the pair alphabet of a transducer.
    pub(crate) fn raw(symbols: Vec<String>) -> Self {
        Self { symbols: symbols.into() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.symbols.len()
    }

    /// Parses a word. Whitespace-separated tokens are looked up one by one;
    /// text without whitespace is split greedily by longest matching symbol.
    /// The empty string and `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|tok| self.letter(tok).ok_or_else(|| Error::UnknownSymbol(tok.into())))
                .collect();
        }
        let mut word = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .letters()
                .filter(|&l| rest.starts_with(self.symbol(l)))
                .max_by_key(|&l| self.symbol(l).len())
                .ok_or_else(|| Error::UnknownSymbol(rest.chars().next().unwrap().to_string()))?;
            word.push(best);
            rest = &rest[self.symbol(best).len()..];
        }
        Ok(word)
    }

    /// Renders a word as space-joined symbols (empty string for ε).
    pub fn render(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(" ")
    }

    /// All words of length `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> WordsOfLength {
        WordsOfLength { base: self.len(), current: Some(vec![0; n]) }
    }

    /// Number of words of length `n`, saturating at `u128::MAX`.
    pub fn count_words(&self, n: usize) -> u128 {
        (0..n).fold(1u128, |acc, _| acc.saturating_mul(self.len() as u128))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

pub struct WordsOfLength {
    base: usize,
    current: Option<Word>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        if self.base == 0 && !out.is_empty() {
            return None;
        }
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.base {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// A letter of the convolution alphabet Σ# × Γ#. `None` is padding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PairSymbol {
    pub top: Option<Letter>,
    pub bottom: Option<Letter>,
}

impl PairSymbol {
    pub fn new(top: Option<Letter>, bottom: Option<Letter>) -> Self {
        debug_assert!(top.is_some() || bottom.is_some());
        Self { top, bottom }
    }

    pub fn both(top: Letter, bottom: Letter) -> Self {
        Self { top: Some(top), bottom: Some(bottom) }
    }

    pub fn is_padded(&self) -> bool {
        self.top.is_none() || self.bottom.is_none()
    }

    pub fn swapped(self) -> Self {
        Self { top: self.bottom, bottom: self.top }
    }
}

/// Dense numbering of Σ# × Γ# minus (#, #).
///
/// The letter of `(t, b)` is `t * (|Γ| + 1) + b` with padding numbered last on
/// each track, so the excluded pair (#, #) would be the final index and the
/// encoding stays contiguous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairAlphabet {
    pub top: Alphabet,
    pub bottom: Alphabet,
}

impl PairAlphabet {
    pub fn new(top: Alphabet, bottom: Alphabet) -> Self {
        Self { top, bottom }
    }

    pub fn len(&self) -> usize {
        (self.top.len() + 1) * (self.bottom.len() + 1) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self, p: PairSymbol) -> Letter {
        let t = p.top.unwrap_or(self.top.len());
        let b = p.bottom.unwrap_or(self.bottom.len());
        t * (self.bottom.len() + 1) + b
    }

    pub fn decode(&self, letter: Letter) -> PairSymbol {
        let width = self.bottom.len() + 1;
        let (t, b) = (letter / width, letter % width);
        PairSymbol {
            top: (t < self.top.len()).then_some(t),
            bottom: (b < self.bottom.len()).then_some(b),
        }
    }

    /// Symbol table for the pair alphabet, with names like `a/b` and `#/b`.
    pub fn symbol_table(&self) -> Alphabet {
        let names = (0..self.len())
            .map(|l| {
                let p = self.decode(l);
                format!(
                    "{}/{}",
                    p.top.map_or(PADDING, |t| self.top.symbol(t)),
                    p.bottom.map_or(PADDING, |b| self.bottom.symbol(b))
                )
            })
            .collect();
        Alphabet::raw(names)
    }

    /// Parses `a/b`, `#/b`, or `a/#`.
    pub fn parse_symbol(&self, text: &str) -> Result<PairSymbol> {
        let (t, b) = text
            .split_once('/')
            .ok_or_else(|| Error::UnknownSymbol(text.to_string()))?;
        let track = |alpha: &Alphabet, s: &str| -> Result<Option<Letter>> {
            if s == PADDING {
                Ok(None)
            } else {
                alpha.letter(s).map(Some).ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            }
        };
        let top = track(&self.top, t)?;
        let bottom = track(&self.bottom, b)?;
        if top.is_none() && bottom.is_none() {
            return Err(Error::UnknownSymbol(text.to_string()));
        }
        Ok(PairSymbol { top, bottom })
    }

    pub fn render_symbol(&self, p: PairSymbol) -> String {
        format!(
            "{}/{}",
            p.top.map_or(PADDING, |t| self.top.symbol(t)),
            p.bottom.map_or(PADDING, |b| self.bottom.symbol(b))
        )
    }
}

/// Convolution of two words: `u` on top of `w`, aligned left, the shorter one
/// padded with `#`.
pub fn convolve(u: &[Letter], w: &[Letter]) -> Vec<PairSymbol> {
    (0..u.len().max(w.len()))
        .map(|i| PairSymbol { top: u.get(i).copied(), bottom: w.get(i).copied() })
        .collect()
}

/// Inverse of [`convolve`]. Returns `None` if the sequence is not the
/// convolution of any pair (a non-padded symbol after padding on a track).
pub fn deconvolve(symbols: &[PairSymbol]) -> Option<(Word, Word)> {
    let mut u = Vec::new();
    let mut w = Vec::new();
    let (mut top_done, mut bottom_done) = (false, false);
    for p in symbols {
        match p.top {
            Some(t) if !top_done => u.push(t),
            Some(_) => return None,
            None => top_done = true,
        }
        match p.bottom {
            Some(b) if !bottom_done => w.push(b),
            Some(_) => return None,
            None => bottom_done = true,
        }
    }
    Some((u, w))
}
