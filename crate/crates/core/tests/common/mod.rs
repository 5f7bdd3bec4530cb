//! Seeded generators and brute-force reference implementations shared by
//! the integration tests. Nothing here calls the algorithms under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepreg_core::regex::RegexAst;
use sepreg_core::{Alphabet, Nfa, Symbol, SymbolSet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The first `size` glyphs a, b, c, …
pub fn sigma(size: usize) -> Alphabet {
    let mut s = SymbolSet::EMPTY;
    for glyph in ('a'..='z').take(size) {
        s.insert(Symbol::from_glyph(glyph).unwrap());
    }
    s
}

pub fn symbols_of(size: usize) -> Vec<Symbol> {
    sigma(size).iter().collect()
}

pub fn w(text: &str) -> Word {
    Word::parse(text).unwrap()
}

pub fn re(text: &str) -> Nfa {
    sepreg_core::regex::compile(text).unwrap()
}

/// Random NFA over the first `alphabet_size` glyphs. Every state gets on
/// average `density` outgoing transitions per symbol.
pub fn random_nfa(rng: &mut impl Rng, max_states: usize, alphabet_size: usize, density: f64) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let alphabet = sigma(alphabet_size);
    let symbols: Vec<Symbol> = alphabet.iter().collect();
    let mut transitions = Vec::new();
    for p in 0..n {
        for &s in &symbols {
            for q in 0..n {
                if rng.gen_bool((density / n as f64).min(1.0)) {
                    transitions.push((p, s, q));
                }
            }
        }
    }
    let mut initial: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    if initial.is_empty() {
        initial.push(0);
    }
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    Nfa::new(n, alphabet, transitions, initial, accepting).unwrap()
}

pub fn random_word(rng: &mut impl Rng, alphabet: Alphabet, max_len: usize) -> Word {
    let symbols: Vec<Symbol> = alphabet.iter().collect();
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| *symbols.choose(rng).unwrap()).collect())
}

pub fn random_word_set(rng: &mut impl Rng, alphabet: Alphabet, max_words: usize, max_len: usize) -> BTreeSet<Word> {
    let count = rng.gen_range(0..=max_words);
    (0..count).map(|_| random_word(rng, alphabet, max_len)).collect()
}

/// Two disjoint finite languages.
pub fn random_finite_pair(
    rng: &mut impl Rng,
    alphabet: Alphabet,
    max_words: usize,
    max_len: usize,
) -> (BTreeSet<Word>, BTreeSet<Word>) {
    let k = random_word_set(rng, alphabet, max_words, max_len);
    let l = random_word_set(rng, alphabet, max_words, max_len)
        .into_iter()
        .filter(|x| !k.contains(x))
        .collect();
    (k, l)
}

pub fn finite_nfa(words: &BTreeSet<Word>, alphabet: Alphabet) -> Nfa {
    let v: Vec<Word> = words.iter().cloned().collect();
    Nfa::from_words(&v, alphabet)
}

/// All words over `alphabet` of length at most `n`, shortest first.
pub fn all_words(alphabet: Alphabet, n: usize) -> Vec<Word> {
    let symbols: Vec<Symbol> = alphabet.iter().collect();
    let mut out = vec![Word::epsilon()];
    let mut frontier = vec![Word::epsilon()];
    for _ in 0..n {
        let mut next = Vec::new();
        for x in &frontier {
            for &s in &symbols {
                let mut y = x.clone();
                y.push(s);
                next.push(y);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Membership by direct simulation on the transition list.
pub fn member(a: &Nfa, word: &Word) -> bool {
    let mut current: HashSet<usize> = a.initial().iter().copied().collect();
    for &s in word.symbols() {
        let mut next = HashSet::new();
        for (p, t, q) in a.transitions() {
            if t == s && current.contains(&p) {
                next.insert(q);
            }
        }
        current = next;
    }
    current.iter().any(|&q| a.is_accepting(q))
}

pub fn language(a: &Nfa, n: usize) -> BTreeSet<Word> {
    all_words(a.alphabet(), n).into_iter().filter(|x| member(a, x)).collect()
}

/// Backtracking regex matcher on the parse tree: the set of end positions
/// reachable from `start`.
fn ends(ast: &RegexAst, word: &[Symbol], start: usize) -> BTreeSet<usize> {
    match ast {
        RegexAst::Empty => BTreeSet::new(),
        RegexAst::Epsilon => BTreeSet::from([start]),
        RegexAst::Symbol(s) => {
            if word.get(start) == Some(s) {
                BTreeSet::from([start + 1])
            } else {
                BTreeSet::new()
            }
        }
        RegexAst::Union(l, r) => {
            let mut out = ends(l, word, start);
            out.extend(ends(r, word, start));
            out
        }
        RegexAst::Concat(l, r) => ends(l, word, start)
            .into_iter()
            .flat_map(|m| ends(r, word, m))
            .collect(),
        RegexAst::Star(c) => {
            let mut seen = BTreeSet::from([start]);
            let mut todo = vec![start];
            while let Some(p) = todo.pop() {
                for q in ends(c, word, p) {
                    if seen.insert(q) {
                        todo.push(q);
                    }
                }
            }
            seen
        }
    }
}

pub fn regex_matches(ast: &RegexAst, word: &Word) -> bool {
    ends(ast, word.symbols(), 0).contains(&word.len())
}

/// Random regex with about `size` nodes over the first `alphabet_size`
/// glyphs. Never contains the empty-language constant.
pub fn random_regex(rng: &mut impl Rng, size: usize, alphabet_size: usize) -> RegexAst {
    if size <= 1 {
        return if rng.gen_bool(0.1) {
            RegexAst::Epsilon
        } else {
            RegexAst::Symbol(*symbols_of(alphabet_size).choose(rng).unwrap())
        };
    }
    match rng.gen_range(0..3) {
        0 => RegexAst::star(random_regex(rng, size - 1, alphabet_size)),
        op => {
            let left = rng.gen_range(1..size.max(2));
            let l = random_regex(rng, left, alphabet_size);
            let r = random_regex(rng, (size - 1).saturating_sub(left).max(1), alphabet_size);
            if op == 1 {
                RegexAst::union(l, r)
            } else {
                RegexAst::concat(l, r)
            }
        }
    }
}

/// Longest common suffix of a nonempty finite set.
pub fn common_suffix(words: &BTreeSet<Word>) -> Word {
    let mut it = words.iter();
    let mut best = it.next().expect("nonempty").clone();
    for x in it {
        while !best.is_suffix_of(x) {
            best = best.suffix(best.len() - 1);
        }
    }
    best
}

/// Reference verdicts for finite K and L (L may overlap K).
pub struct FiniteOracle {
    pub subseq_single: bool,
    pub subseq_union: bool,
    pub suffix_single: bool,
    pub suffix_union: bool,
    pub suffix_bc: bool,
    pub pt: bool,
}

pub fn finite_oracle(k: &BTreeSet<Word>, l: &BTreeSet<Word>, ambient: Alphabet) -> FiniteOracle {
    let disjoint = k.is_disjoint(l);
    let ambient_nonempty = !ambient.is_empty();

    let subseq_single = match k.iter().map(Word::len).min() {
        // every candidate is a subsequence of a shortest K-word
        Some(m) => all_words(ambient, m).iter().any(|c| {
            k.iter().all(|x| c.is_subsequence_of(x)) && l.iter().all(|y| !c.is_subsequence_of(y))
        }),
        None => l.is_empty() || ambient_nonempty,
    };
    let subseq_union = k.iter().all(|x| l.iter().all(|y| !x.is_subsequence_of(y)));

    let suffix_single = if k.is_empty() {
        // a word longer than every L-word is a suffix of none of them
        l.is_empty() || ambient_nonempty
    } else {
        let c = common_suffix(k);
        l.iter().all(|y| !c.is_suffix_of(y))
    };
    let suffix_union = k.iter().all(|x| l.iter().all(|y| !x.is_suffix_of(y)));
    FiniteOracle {
        subseq_single,
        subseq_union,
        suffix_single,
        suffix_union,
        // finite languages are boolean combinations of suffix languages,
        // and of subsequence languages
        suffix_bc: disjoint,
        pt: disjoint,
    }
}

/// Whether state `q` lies on a closed walk reading exactly the symbols of
/// `sigma0`, by search over (state, symbols used) pairs.
pub fn has_exact_loop(a: &Nfa, q: usize, sigma0: SymbolSet) -> bool {
    if sigma0.is_empty() {
        return false;
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(q, 0u64)]);
    seen.insert((q, 0u64));
    while let Some((p, used)) = queue.pop_front() {
        for &(s, r) in a.transitions_from(p) {
            if !sigma0.contains(s) {
                continue;
            }
            let next = used | (1u64 << s.id());
            if r == q && next == sigma0.bits() {
                return true;
            }
            if seen.insert((r, next)) {
                queue.push_back((r, next));
            }
        }
    }
    false
}

/// Largest Σ₀ for which both states carry a closed walk with alphabet
/// exactly Σ₀, by enumeration of every subset of the joint alphabet.
pub fn brute_saturated(a: &Nfa, b: &Nfa, qa: usize, qb: usize) -> SymbolSet {
    let symbols: Vec<Symbol> = a.alphabet().union(b.alphabet()).iter().collect();
    let mut admissible = Vec::new();
    for mask in 1u32..(1 << symbols.len()) {
        let mut s0 = SymbolSet::EMPTY;
        for (i, &s) in symbols.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s0.insert(s);
            }
        }
        if has_exact_loop(a, qa, s0) && has_exact_loop(b, qb, s0) {
            admissible.push(s0);
        }
    }
    let top = admissible.iter().copied().max_by_key(|s| s.len()).unwrap_or(SymbolSet::EMPTY);
    assert!(
        admissible.iter().all(|s| s.is_subset(top)),
        "admissible alphabets have no maximum"
    );
    top
}

/// States reachable from `p` reading only symbols of `sigma0`.
pub fn reach_within(a: &Nfa, p: usize, sigma0: SymbolSet) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([p]);
    let mut todo = vec![p];
    while let Some(x) = todo.pop() {
        for &(s, y) in a.transitions_from(x) {
            if sigma0.contains(s) && seen.insert(y) {
                todo.push(y);
            }
        }
    }
    seen
}
