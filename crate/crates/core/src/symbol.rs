//! Symbols, symbol sets and words.
//!
//! Glyphs are drawn from `[0-9a-z]`. Every glyph has a fixed global index
//! (digits first, then letters), so symbol order is ASCII order and any two
//! automata agree on what a symbol id means without remapping.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Number of distinct glyphs.
pub const GLYPH_COUNT: usize = 36;

/// One input symbol, identified by its global glyph index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn from_glyph(glyph: char) -> Option<Symbol> {
        match glyph {
            '0'..='9' => Some(Symbol(glyph as u8 - b'0')),
            'a'..='z' => Some(Symbol(glyph as u8 - b'a' + 10)),
            _ => None,
        }
    }

    pub fn from_id(id: usize) -> Option<Symbol> {
        (id < GLYPH_COUNT).then_some(Symbol(id as u8))
    }

    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub fn glyph(self) -> char {
        if self.0 < 10 {
            (b'0' + self.0) as char
        } else {
            (b'a' + self.0 - 10) as char
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

/// A set of symbols packed into a bit mask. Also serves as the alphabet type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolSet(u64);

/// Alphabets are plain symbol sets; iteration order is glyph order.
pub type Alphabet = SymbolSet;

impl SymbolSet {
    pub const EMPTY: SymbolSet = SymbolSet(0);

    pub fn singleton(s: Symbol) -> SymbolSet {
        SymbolSet(1 << s.0)
    }

    /// Parses a run of glyphs such as `"abc"`; whitespace is ignored.
    pub fn from_glyphs(text: &str) -> Result<SymbolSet, Error> {
        let mut set = SymbolSet::EMPTY;
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            let s = Symbol::from_glyph(c).ok_or(Error::BadGlyph(c))?;
            set.insert(s);
        }
        Ok(set)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, s: Symbol) {
        self.0 |= 1 << s.0;
    }

    pub fn contains(self, s: Symbol) -> bool {
        self.0 & (1 << s.0) != 0
    }

    pub fn union(self, other: SymbolSet) -> SymbolSet {
        SymbolSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SymbolSet) -> SymbolSet {
        SymbolSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: SymbolSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Symbol> {
        (0..GLYPH_COUNT as u8)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(Symbol)
    }
}

impl FromIterator<Symbol> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut set = SymbolSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// A finite word. Ordered shortlex: shorter words first, then lexicographic
/// by symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn epsilon() -> Word {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    /// Parses glyphs; `@` or the empty string denote the empty word.
    pub fn parse(text: &str) -> Result<Word, Error> {
        if text == "@" {
            return Ok(Word::epsilon());
        }
        text.chars()
            .map(|c| Symbol::from_glyph(c).ok_or(Error::BadGlyph(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> SymbolSet {
        self.0.iter().copied().collect()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        self.0.pop()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self ≼ other`: `self` is obtained from `other` by deleting symbols.
    pub fn is_subsequence_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|s| it.any(|t| t == s))
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Suffix of length `n` (the whole word if shorter).
    pub fn suffix(&self, n: usize) -> Word {
        let start = self.0.len().saturating_sub(n);
        Word(self.0[start..].to_vec())
    }

    /// Renders the word, using `@` for the empty word.
    pub fn display_or_eps(&self) -> String {
        if self.0.is_empty() {
            "@".to_string()
        } else {
            self.to_string()
        }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
