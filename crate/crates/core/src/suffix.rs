//! Separation by suffix-closed languages `Σ*w` (single), finite unions of
//! them, and boolean combinations; the prefix variants run the same
//! deciders on reversed inputs.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::symbol::{Alphabet, Word};
use crate::verdict::{or_inconclusive, Certificate, Family, Limits, Verdict, Witness};

/// Determinization cap used by the witness validators.
const VALIDATE_CAP: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuffixWitness {
    /// The separator `Σ*w`.
    SingleWord(Word),
    /// The separator `Σ*w₁ ∪ … ∪ Σ*wₙ`.
    UnionOfSuffixes(Vec<Word>),
    /// A boolean combination distinguishing words by their last `k` symbols:
    /// the separator is the finite set `exact_words` (K-words shorter than
    /// `k`) together with `Σ*u` for every `u` in `suffix_classes` (suffixes
    /// of length `k` of K-words).
    BcCells {
        k: usize,
        exact_words: Vec<Word>,
        suffix_classes: Vec<Word>,
    },
}

impl SuffixWitness {
    /// The same witness with every word reversed.
    pub fn reversed(&self) -> SuffixWitness {
        let rev = |ws: &[Word]| ws.iter().map(Word::reversed).collect();
        match self {
            SuffixWitness::SingleWord(w) => SuffixWitness::SingleWord(w.reversed()),
            SuffixWitness::UnionOfSuffixes(ws) => SuffixWitness::UnionOfSuffixes(rev(ws)),
            SuffixWitness::BcCells {
                k,
                exact_words,
                suffix_classes,
            } => SuffixWitness::BcCells {
                k: *k,
                exact_words: rev(exact_words),
                suffix_classes: rev(suffix_classes),
            },
        }
    }

    /// The separator as an automaton over `ambient`.
    pub fn separator(&self, ambient: Alphabet) -> Nfa {
        let closure = |ws: &[Word]| Nfa::from_words(ws, ambient).upward_suffix_closure(ambient);
        match self {
            SuffixWitness::SingleWord(w) => closure(std::slice::from_ref(w)),
            SuffixWitness::UnionOfSuffixes(ws) => closure(ws),
            SuffixWitness::BcCells {
                exact_words,
                suffix_classes,
                ..
            } => Nfa::from_words(exact_words, ambient).union(&closure(suffix_classes)),
        }
    }
}

/// How the suffix languages may be combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Combination {
    Single,
    Union,
    Bc,
}

fn ambient_of(k: &Nfa, l: &Nfa) -> Alphabet {
    k.alphabet().union(l.alphabet())
}

/// Every suffix of `w`.
fn suffixes_of(w: &Word) -> Nfa {
    let n = w.len();
    let transitions = (0..n).map(|i| (i, w.symbols()[i], i + 1));
    Nfa::new(n + 1, w.alphabet(), transitions, 0..=n, [n]).expect("well formed")
}

/// `Σ*w` over `ambient`.
fn ends_with(w: &Word, ambient: Alphabet) -> Nfa {
    Nfa::single_word(w, ambient).upward_suffix_closure(ambient)
}

/// Common prefixes of words of `rev K` and `rev L`, i.e. reversed common
/// suffixes of a K-word and an L-word.
fn common_reversed_suffixes(k: &Nfa, l: &Nfa) -> Nfa {
    k.reverse().prefixes().intersect(&l.reverse().prefixes()).trim()
}

/// Longest common suffix of all words of `k`.
pub fn lcs(k: &Nfa) -> Result<Word> {
    let rev = k.reverse().trim();
    if rev.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let mut current: Vec<usize> = rev.initial().to_vec();
    let mut out = Word::epsilon();
    loop {
        if current.iter().any(|&q| rev.is_accepting(q)) {
            break;
        }
        let mut symbols = current
            .iter()
            .flat_map(|&q| rev.transitions_from(q).iter().map(|&(s, _)| s));
        let Some(s) = symbols.next() else { break };
        if symbols.any(|t| t != s) {
            break;
        }
        let mut next: Vec<usize> = current.iter().flat_map(|&q| rev.successors(q, s)).collect();
        next.sort_unstable();
        next.dedup();
        current = next;
        out.push(s);
    }
    Ok(out.reversed())
}

pub fn decide_suffix_single(k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let start = Instant::now();
    or_inconclusive(Family::SuffixSingle, suffix_single(k, l, limits)).timed(start)
}

fn suffix_single(k: &Nfa, l: &Nfa, limits: &Limits) -> Result<Verdict> {
    let ambient = ambient_of(k, l);
    let family = Family::SuffixSingle;
    let w = match lcs(k) {
        Ok(w) => w,
        Err(Error::EmptyLanguage) => return suffix_single_empty_k(l, ambient, limits),
        Err(e) => return Err(e),
    };
    Ok(match ends_with(&w, ambient).intersect(l).shortest_word() {
        None => Verdict::separable(family, Some(Witness::Affix(SuffixWitness::SingleWord(w)))),
        Some(l_word) => Verdict::not_separable(
            family,
            Some(Certificate::LcsCovered { lcs: w, l_word }),
        ),
    })
}

/// K empty: separable iff some word is a suffix of no L-word. Searched for
/// in the complement of the suffix language of L.
fn suffix_single_empty_k(l: &Nfa, ambient: Alphabet, limits: &Limits) -> Result<Verdict> {
    let trimmed = l.trim().with_alphabet(ambient);
    let suffixes = if trimmed.is_empty() {
        trimmed
    } else {
        let n = trimmed.state_count();
        let accepting: Vec<usize> = trimmed.accepting_states().collect();
        Nfa::new(n, ambient, trimmed.transitions().collect::<Vec<_>>(), 0..n, accepting)?
    };
    let outside = suffixes.complement_bounded(ambient, limits.determinize_cap)?;
    Ok(match outside.shortest_word() {
        Some(w) => Verdict::separable(
            Family::SuffixSingle,
            Some(Witness::Affix(SuffixWitness::SingleWord(w))),
        ),
        None => Verdict::not_separable(Family::SuffixSingle, Some(Certificate::NoAvoidingWord)),
    })
}

/// Evidence that common suffixes have unbounded length: a common suffix at
/// least as long as the automaton of common suffixes, which can be pumped.
fn unbounded_affix(k: &Nfa, l: &Nfa, common: &Nfa) -> Certificate {
    let ambient = ambient_of(k, l);
    let affix = common
        .shortest_word_at_least(common.state_count())
        .expect("infinite language has long words")
        .reversed();
    let tail = ends_with(&affix, ambient);
    Certificate::UnboundedCommonAffix {
        k_word: k.intersect(&tail).shortest_word().expect("affix is a K-suffix"),
        l_word: l.intersect(&tail).shortest_word().expect("affix is an L-suffix"),
        affix,
    }
}

/// The length-`len` suffixes of K-words, and K-words shorter than `len`.
fn cells(k: &Nfa, len: usize, limits: &Limits) -> Option<(Vec<Word>, Vec<Word>)> {
    let cap = limits.witness_words_cap;
    let exact = if len == 0 {
        Vec::new()
    } else {
        k.first_words(len - 1, cap + 1)
    };
    // suffixes of length `len` are prefixes of rev K of that length
    let classes: Vec<Word> = k
        .reverse()
        .prefixes()
        .intersect(&exactly_length(len, k.alphabet()))
        .first_words(len, cap + 1)
        .iter()
        .map(Word::reversed)
        .collect();
    if exact.len() > cap || classes.len() > cap {
        return None;
    }
    let mut classes = classes;
    classes.sort();
    Some((exact, classes))
}

fn exactly_length(len: usize, ambient: Alphabet) -> Nfa {
    let transitions: Vec<_> = (0..len)
        .flat_map(|i| ambient.iter().map(move |s| (i, s, i + 1)))
        .collect();
    Nfa::new(len + 1, ambient, transitions, [0], [len]).expect("well formed")
}

/// Smallest length at which no K-word and L-word share a suffix, given
/// the trimmed automaton of reversed common suffixes.
fn separating_length(common: &Nfa) -> usize {
    if common.is_empty() {
        0
    } else {
        common.longest_word_len().expect("finite") + 1
    }
}

pub fn decide_suffix_union(k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let start = Instant::now();
    let family = Family::SuffixUnion;
    let ambient = ambient_of(k, l);
    if let Some(l_word) = k.upward_suffix_closure(ambient).intersect(l).shortest_word() {
        let k_word = k
            .intersect(&suffixes_of(&l_word))
            .shortest_word()
            .expect("some K-word is a suffix of the L-word");
        return Verdict::not_separable(family, Some(Certificate::Embedding { k_word, l_word }))
            .timed(start);
    }
    let common = common_reversed_suffixes(k, l);
    if common.is_infinite() {
        return Verdict::not_separable(family, Some(unbounded_affix(k, l, &common))).timed(start);
    }
    let len = separating_length(&common);
    let mut verdict = Verdict::separable(family, None);
    match cells(k, len, limits) {
        Some((exact, classes)) => {
            let mut words: Vec<Word> = exact.into_iter().chain(classes).collect();
            words.sort();
            // a word with a shorter listed suffix is redundant
            let kept: Vec<Word> = words
                .iter()
                .filter(|w| !words.iter().any(|v| v != *w && v.is_suffix_of(w)))
                .cloned()
                .collect();
            verdict.witness = Some(Witness::Affix(SuffixWitness::UnionOfSuffixes(kept)));
        }
        None => verdict.stats.caps_hit.push("witness words".into()),
    }
    verdict.timed(start)
}

pub fn decide_suffix_bc(k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let start = Instant::now();
    let family = Family::SuffixBc;
    // overlapping inputs can never be separated, whatever the common
    // suffix lengths are
    if let Some(w) = k.intersect(l).shortest_word() {
        return Verdict::not_separable(family, Some(Certificate::SharedWord(w))).timed(start);
    }
    let common = common_reversed_suffixes(k, l);
    if common.is_infinite() {
        return Verdict::not_separable(family, Some(unbounded_affix(k, l, &common))).timed(start);
    }
    let len = separating_length(&common);
    let mut verdict = Verdict::separable(family, None);
    match cells(k, len, limits) {
        Some((exact_words, suffix_classes)) => {
            verdict.witness = Some(Witness::Affix(SuffixWitness::BcCells {
                k: len,
                exact_words,
                suffix_classes,
            }));
        }
        None => verdict.stats.caps_hit.push("witness words".into()),
    }
    verdict.timed(start)
}

fn reverse_certificate(c: Certificate) -> Certificate {
    match c {
        Certificate::SharedWord(w) => Certificate::SharedWord(w.reversed()),
        Certificate::Embedding { k_word, l_word } => Certificate::Embedding {
            k_word: k_word.reversed(),
            l_word: l_word.reversed(),
        },
        Certificate::LcsCovered { lcs, l_word } => Certificate::LcsCovered {
            lcs: lcs.reversed(),
            l_word: l_word.reversed(),
        },
        Certificate::UnboundedCommonAffix {
            affix,
            k_word,
            l_word,
        } => Certificate::UnboundedCommonAffix {
            affix: affix.reversed(),
            k_word: k_word.reversed(),
            l_word: l_word.reversed(),
        },
        other => other,
    }
}

/// Prefix-order deciders: the suffix decider on reversed inputs, with the
/// words of the witness and certificate reversed back.
pub fn decide_prefix(combination: Combination, k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let (rk, rl) = (k.reverse(), l.reverse());
    let (mut v, family) = match combination {
        Combination::Single => (decide_suffix_single(&rk, &rl, limits), Family::PrefixSingle),
        Combination::Union => (decide_suffix_union(&rk, &rl, limits), Family::PrefixUnion),
        Combination::Bc => (decide_suffix_bc(&rk, &rl, limits), Family::PrefixBc),
    };
    v.family = family;
    v.witness = v.witness.map(|w| match w {
        Witness::Affix(s) => Witness::Affix(s.reversed()),
        other => other,
    });
    v.certificate = v.certificate.map(reverse_certificate);
    v
}

/// Suffix-order dispatch by combination.
pub fn decide_suffix(combination: Combination, k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    match combination {
        Combination::Single => decide_suffix_single(k, l, limits),
        Combination::Union => decide_suffix_union(k, l, limits),
        Combination::Bc => decide_suffix_bc(k, l, limits),
    }
}

/// Re-checks a suffix-order witness: the separator contains K and misses
/// L. With `prefix` set, words are read as prefixes instead.
pub fn validate_suffix_witness(k: &Nfa, l: &Nfa, witness: &SuffixWitness, prefix: bool) -> Result<bool> {
    if prefix {
        return validate_suffix_witness(&k.reverse(), &l.reverse(), &witness.reversed(), false);
    }
    if let SuffixWitness::BcCells {
        k: len,
        exact_words,
        suffix_classes,
    } = witness
    {
        let shaped = exact_words.iter().all(|w| w.len() < *len)
            && suffix_classes.iter().all(|w| w.len() == *len);
        if !shaped {
            return Ok(false);
        }
    }
    let ambient = ambient_of(k, l);
    let sep = witness.separator(ambient);
    let outside = sep.complement_bounded(ambient.union(sep.alphabet()), VALIDATE_CAP)?;
    Ok(k.intersect(&outside).is_empty() && sep.intersect(l).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::compile;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn re(s: &str) -> Nfa {
        compile(s).unwrap()
    }

    fn run(c: Combination, k: &str, l: &str) -> Verdict {
        decide_suffix(c, &re(k), &re(l), &Limits::default())
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs(&re("abba + ba")).unwrap(), w("ba"));
        assert_eq!(lcs(&re("a*ba")).unwrap(), w("ba"));
        assert_eq!(lcs(&re("a+b")).unwrap(), w("@"));
        assert_eq!(lcs(&re("(ab)*ab")).unwrap(), w("ab"));
        assert_eq!(lcs(&re("#")), Err(Error::EmptyLanguage));
    }

    #[test]
    fn single_examples() {
        let v = run(Combination::Single, "(a+b)*ab", "(a+b)*ba");
        assert_eq!(v.witness, Some(Witness::Affix(SuffixWitness::SingleWord(w("ab")))));
        assert_eq!(run(Combination::Single, "a+b", "c").separable, Some(false));
        let v = run(Combination::Single, "ab", "#");
        assert_eq!(v.witness, Some(Witness::Affix(SuffixWitness::SingleWord(w("ab")))));
    }

    #[test]
    fn single_with_empty_k() {
        let v = run(Combination::Single, "#", "#");
        assert_eq!(v.witness, Some(Witness::Affix(SuffixWitness::SingleWord(w("@")))));
        assert_eq!(run(Combination::Single, "#", "(a+b)*").separable, Some(false));
        let v = run(Combination::Single, "#", "a*b");
        assert_eq!(v.witness, Some(Witness::Affix(SuffixWitness::SingleWord(w("a")))));
    }

    #[test]
    fn union_examples() {
        assert_eq!(run(Combination::Union, "a*b", "b*a").separable, Some(true));
        let v = run(Combination::Union, "(aa)*", "a(aa)*");
        assert_eq!(v.separable, Some(false));
        assert!(matches!(v.certificate, Some(Certificate::Embedding { .. })));
        assert_eq!(run(Combination::Union, "#", "a*").separable, Some(true));
        let v = run(Combination::Union, "b(aa)*ab", "(aa)*b");
        assert!(matches!(v.certificate, Some(Certificate::UnboundedCommonAffix { .. })));
    }

    #[test]
    fn union_witness_is_suffix_minimal() {
        let v = run(Combination::Union, "ab+bb+b", "c");
        assert_eq!(
            v.witness,
            Some(Witness::Affix(SuffixWitness::UnionOfSuffixes(vec![w("b")])))
        );
    }

    #[test]
    fn bc_examples() {
        assert_eq!(run(Combination::Bc, "(aa)*", "a(aa)*").separable, Some(false));
        let v = run(Combination::Bc, "ab", "bb");
        let Some(Witness::Affix(SuffixWitness::BcCells { k, .. })) = v.witness else {
            panic!("expected cells")
        };
        assert_eq!(k, 2);
        let v = run(Combination::Bc, "a", "a");
        assert_eq!(v.certificate, Some(Certificate::SharedWord(w("a"))));
    }

    #[test]
    fn prefix_examples() {
        let l = Limits::default();
        let v = decide_prefix(Combination::Single, &re("ab(a+b)*"), &re("ba(a+b)*"), &l);
        assert_eq!(v.family, Family::PrefixSingle);
        assert_eq!(v.witness, Some(Witness::Affix(SuffixWitness::SingleWord(w("ab")))));
        let v = decide_prefix(Combination::Bc, &re("(aa)*").reverse(), &re("a(aa)*").reverse(), &l);
        assert_eq!(v.separable, Some(false));
        assert_eq!(decide_prefix(Combination::Union, &re("#"), &re("a"), &l).separable, Some(true));
    }

    #[test]
    fn witnesses_validate() {
        for (k, l) in [("(a+b)*ab", "(a+b)*ba"), ("ab", "bb"), ("a*b", "b*a"), ("ab+bb+b", "c")] {
            let (k, l) = (re(k), re(l));
            for c in [Combination::Single, Combination::Union, Combination::Bc] {
                let v = decide_suffix(c, &k, &l, &Limits::default());
                if let Some(Witness::Affix(s)) = &v.witness {
                    assert!(validate_suffix_witness(&k, &l, s, false).unwrap(), "{s:?}");
                }
                let v = decide_prefix(c, &k.reverse(), &l.reverse(), &Limits::default());
                if let Some(Witness::Affix(s)) = &v.witness {
                    assert!(
                        validate_suffix_witness(&k.reverse(), &l.reverse(), s, true).unwrap(),
                        "{s:?}"
                    );
                }
            }
        }
        let (k, l) = (re("ab"), re("bb"));
        let bogus = SuffixWitness::SingleWord(w("b"));
        assert!(!validate_suffix_witness(&k, &l, &bogus, false).unwrap());
    }
}
