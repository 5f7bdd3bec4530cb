use std::collections::HashMap;
use std::fmt;

use crate::nfa::Nfa;
use crate::subseq::minimal_words;
use crate::symbol::Word;
use crate::verdict::Limits;

/// Most ≼-minimal successors tried per word.
const BRANCH_CAP: usize = 16;

/// A ≼-increasing sequence of words alternating between K and L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagCertificate {
    pub words: Vec<Word>,
    /// Whether `words[i]` is claimed for K (otherwise for L).
    pub in_k: Vec<bool>,
}

impl ZigzagCertificate {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Re-checks memberships, alternation and the subsequence steps.
    pub fn validate(&self, k: &Nfa, l: &Nfa) -> bool {
        self.words.len() == self.in_k.len()
            && !self.words.is_empty()
            && self
                .words
                .iter()
                .zip(&self.in_k)
                .all(|(w, &side)| if side { k.accepts(w) } else { l.accepts(w) })
            && self.in_k.windows(2).all(|t| t[0] != t[1])
            && self.words.windows(2).all(|p| p[0].is_subsequence_of(&p[1]))
    }
}

impl fmt::Display for ZigzagCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, &side)) in self.words.iter().zip(&self.in_k).enumerate() {
            if i > 0 {
                f.write_str(" ≼ ")?;
            }
            write!(f, "{}∈{}", w.display_or_eps(), if side { "K" } else { "L" })?;
        }
        Ok(())
    }
}

struct Search<'a> {
    k: &'a Nfa,
    l: &'a Nfa,
    max_len: usize,
    limits: Limits,
    successors: HashMap<(Word, bool), Vec<Word>>,
    /// Longest chain found from a word, keyed with its side and the
    /// remaining length budget.
    best: HashMap<(Word, bool, usize), Vec<Word>>,
}

impl Search<'_> {
    /// ≼-minimal words of the other language above `w`.
    fn successors(&mut self, w: &Word, in_k: bool) -> Vec<Word> {
        let key = (w.clone(), in_k);
        if let Some(s) = self.successors.get(&key) {
            return s.clone();
        }
        let other = if in_k { self.l } else { self.k };
        let ambient = self.k.alphabet().union(self.l.alphabet());
        let above = other.intersect(&crate::subseq::greedy_embedding_dfa(w, ambient));
        let found = minimal_words(&above, &self.limits).map_or_else(|_| Vec::new(), |(ws, _)| ws);
        self.successors.insert(key, found.clone());
        found
    }

    fn chain(&mut self, w: &Word, in_k: bool, budget: usize) -> Vec<Word> {
        let key = (w.clone(), in_k, budget);
        if let Some(c) = self.best.get(&key) {
            return c.clone();
        }
        let mut best = vec![w.clone()];
        if budget > 1 {
            for next in self.successors(w, in_k) {
                let tail = self.chain(&next, !in_k, budget - 1);
                if tail.len() + 1 > best.len() {
                    best = std::iter::once(w.clone()).chain(tail).collect();
                }
                if best.len() == budget {
                    break;
                }
            }
        }
        self.best.insert(key, best.clone());
        best
    }
}

/// Longest zigzag of at most `max_len` words, none longer than
/// `max_word_len`. Only ≼-minimal choices are explored: replacing each word
/// by a minimal word below it keeps every zigzag valid, so within the caps
/// this is exhaustive.
pub fn bounded_zigzag_search(
    k: &Nfa,
    l: &Nfa,
    max_len: usize,
    max_word_len: usize,
) -> Option<ZigzagCertificate> {
    let mut search = Search {
        k,
        l,
        max_len,
        limits: Limits {
            basis_max_len: max_word_len,
            witness_words_cap: BRANCH_CAP,
            ..Limits::default()
        },
        successors: HashMap::new(),
        best: HashMap::new(),
    };
    let mut best: Option<(Vec<Word>, bool)> = None;
    for in_k in [true, false] {
        let side = if in_k { k } else { l };
        let starts = minimal_words(side, &search.limits).map_or_else(|_| Vec::new(), |(ws, _)| ws);
        for w in starts {
            let chain = search.chain(&w, in_k, search.max_len);
            if best.as_ref().map_or(true, |(b, _)| chain.len() > b.len()) {
                best = Some((chain, in_k));
            }
        }
    }
    best.map(|(words, first_in_k)| ZigzagCertificate {
        in_k: (0..words.len()).map(|i| (i % 2 == 0) == first_in_k).collect(),
        words,
    })
}
