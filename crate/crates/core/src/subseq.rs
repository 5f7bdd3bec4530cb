//! Separation by languages upward-closed under the subsequence order ≼:
//! a single closure `closure≼(w)`, or an arbitrary union of such closures.
//! Both deciders separate K *from* L, which is asymmetric.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::symbol::{Alphabet, Word};
use crate::verdict::{or_inconclusive, Certificate, Family, Limits, Verdict, Witness};

/// Largest residual automaton tolerated while listing minimal words.
const BASIS_STATE_CAP: usize = 1 << 16;

/// Minimal complete DFA for `closure≼(w)`: state `i` records that the first
/// `i` symbols of `w` are embedded, reading greedily.
pub fn greedy_embedding_dfa(w: &Word, ambient: Alphabet) -> Nfa {
    let sigma = ambient.union(w.alphabet());
    let n = w.len();
    let mut transitions = Vec::with_capacity((n + 1) * sigma.len());
    for i in 0..=n {
        for s in sigma.iter() {
            let to = if i < n && w.symbols()[i] == s { i + 1 } else { i };
            transitions.push((i, s, to));
        }
    }
    Nfa::new(n + 1, sigma, transitions, [0], [n]).expect("greedy DFA is well formed")
}

/// All subsequences of `w`; state `i` means `i` symbols of `w` were passed.
fn subsequences_of(w: &Word) -> Nfa {
    let n = w.len();
    let mut transitions = Vec::new();
    for i in 0..n {
        for j in i..n {
            transitions.push((i, w.symbols()[j], j + 1));
        }
    }
    Nfa::new(n + 1, w.alphabet(), transitions, [0], 0..=n).expect("well formed")
}

/// Whether `L(k) ⊆ closure≼(w)`.
fn covered_by(k: &Nfa, w: &Word, ambient: Alphabet) -> bool {
    let outside = greedy_embedding_dfa(w, ambient)
        .complement_dfa()
        .expect("greedy DFA is complete");
    k.intersect(&outside).is_empty()
}

/// Whether `closure≼(w) ∩ L(l) = ∅`.
fn avoids(w: &Word, l: &Nfa, ambient: Alphabet) -> bool {
    greedy_embedding_dfa(w, ambient).intersect(l).is_empty()
}

fn ambient_of(k: &Nfa, l: &Nfa) -> Alphabet {
    k.alphabet().union(l.alphabet())
}

/// Lists ≼-minimal words of K in shortlex order. A shortest word of K
/// outside the closure of the words found so far is always ≼-minimal, so
/// each round adds one basis word. The flag is set when the residue became
/// empty, i.e. the words generate `closure≼(K)`.
pub fn minimal_words(k: &Nfa, limits: &Limits) -> Result<(Vec<Word>, bool)> {
    let ambient = k.alphabet();
    let mut residue = k.trim();
    let mut basis = Vec::new();
    loop {
        limits.check_deadline()?;
        let Some(w) = residue.shortest_word() else {
            return Ok((basis, true));
        };
        if w.len() > limits.basis_max_len
            || basis.len() >= limits.witness_words_cap
            || residue.state_count() > BASIS_STATE_CAP
        {
            return Ok((basis, false));
        }
        let outside = greedy_embedding_dfa(&w, ambient)
            .complement_dfa()
            .expect("greedy DFA is complete");
        residue = residue.intersect(&outside).trim();
        basis.push(w);
    }
}

/// Separable iff no word of K is a subsequence of a word of L; the
/// separator is `closure≼(K)`.
pub fn decide_subseq_union(k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let start = Instant::now();
    let ambient = ambient_of(k, l);
    let closure = k.upward_subseq_closure(ambient);
    let meet = closure.intersect(l);
    let verdict = match meet.shortest_word() {
        None => {
            let (minimal_words, complete) = match minimal_words(k, limits) {
                Ok(r) => r,
                Err(_) => (Vec::new(), false),
            };
            Verdict::separable(
                Family::SubseqUnion,
                Some(Witness::SubseqClosure {
                    closure,
                    minimal_words,
                    complete,
                }),
            )
        }
        Some(l_word) => {
            let k_word = k
                .intersect(&subsequences_of(&l_word))
                .shortest_word()
                .expect("some K-word embeds into the L-word");
            Verdict::not_separable(
                Family::SubseqUnion,
                Some(Certificate::Embedding { k_word, l_word }),
            )
        }
    };
    verdict.timed(start)
}

/// Separable iff some word `w` has `K ⊆ closure≼(w)` and
/// `closure≼(w) ∩ L = ∅`. Such a `w` embeds into a shortest word of K,
/// which bounds the depth-first search; candidates failing the first
/// condition are pruned, since appending symbols only shrinks the closure.
/// Among witnesses, one that no covering extension improves is returned.
pub fn decide_subseq_single(k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    let start = Instant::now();
    let verdict = or_inconclusive(Family::SubseqSingle, single_search(k, l, limits));
    verdict.timed(start)
}

fn single_search(k: &Nfa, l: &Nfa, limits: &Limits) -> Result<Verdict> {
    let ambient = ambient_of(k, l);
    let Some(shortest) = k.shortest_word() else {
        return empty_k(l, ambient, limits);
    };
    let bound = shortest.len();
    let depth = limits.depth_cap.map_or(bound, |c| c.min(bound));
    let mut w = Word::epsilon();
    if let Some(found) = dfs(k, l, ambient, &mut w, depth, limits)? {
        return Ok(Verdict::separable(
            Family::SubseqSingle,
            Some(Witness::SubseqWord(found)),
        ));
    }
    if depth < bound {
        return Err(Error::CapExceeded {
            what: "subsequence search depth",
            cap: depth,
        });
    }
    Ok(Verdict::not_separable(
        Family::SubseqSingle,
        Some(Certificate::SearchExhausted { depth }),
    ))
}

fn dfs(
    k: &Nfa,
    l: &Nfa,
    ambient: Alphabet,
    w: &mut Word,
    depth: usize,
    limits: &Limits,
) -> Result<Option<Word>> {
    limits.check_deadline()?;
    if !covered_by(k, w, ambient) {
        return Ok(None);
    }
    // avoiding L is preserved by extension, so longer witnesses are tried
    // first and the reported separator is as tight as possible
    if w.len() < depth {
        for s in k.used_symbols().iter() {
            w.push(s);
            let r = dfs(k, l, ambient, w, depth, limits)?;
            w.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
    }
    Ok(avoids(w, l, ambient).then(|| w.clone()))
}

/// With K empty, any `w` whose closure misses L separates. Such a `w`
/// exists iff the downward closure of L is not everything, which happens
/// exactly when no strongly connected part of the trimmed L reads every
/// ambient symbol.
fn empty_k(l: &Nfa, ambient: Alphabet, limits: &Limits) -> Result<Verdict> {
    let l = l.trim();
    if l.is_empty() {
        return Ok(Verdict::separable(
            Family::SubseqSingle,
            Some(Witness::SubseqWord(Word::epsilon())),
        ));
    }
    let scc = crate::scc::SccDecomposition::compute(&l);
    if (0..scc.len()).any(|c| ambient.is_subset(scc.alphabet(c))) {
        return Ok(Verdict::not_separable(
            Family::SubseqSingle,
            Some(Certificate::NoAvoidingWord),
        ));
    }
    let w = match shortest_outside_downward_closure(&l, ambient, limits) {
        Ok(w) => w,
        Err(Error::CapExceeded { .. }) => {
            // every block of the ambient symbols, repeated past the state
            // count, escapes the downward closure
            let block: Vec<_> = ambient.iter().collect();
            let reps = l.state_count() + 1;
            Word::new(block.iter().copied().cycle().take(block.len() * reps).collect())
        }
        Err(e) => return Err(e),
    };
    debug_assert!(avoids(&w, &l, ambient));
    Ok(Verdict::separable(
        Family::SubseqSingle,
        Some(Witness::SubseqWord(w)),
    ))
}

/// Shortest word that is not a subsequence of any word of the trimmed `l`.
fn shortest_outside_downward_closure(l: &Nfa, ambient: Alphabet, limits: &Limits) -> Result<Word> {
    let n = l.state_count();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|p| {
            let mut seen = vec![false; n];
            seen[p] = true;
            let mut stack = vec![p];
            while let Some(q) = stack.pop() {
                for &(_, r) in l.transitions_from(q) {
                    if !seen[r] {
                        seen[r] = true;
                        stack.push(r);
                    }
                }
            }
            seen
        })
        .collect();
    let mut transitions = Vec::new();
    for p in 0..n {
        for q in (0..n).filter(|&q| reach[p][q]) {
            for &(s, r) in l.transitions_from(q) {
                transitions.push((p, s, r));
            }
        }
    }
    let down = Nfa::new(n, ambient, transitions, l.initial().to_vec(), 0..n)?;
    let outside = down
        .determinize_bounded(limits.determinize_cap)?
        .complement_dfa()?;
    Ok(outside.shortest_word().expect("downward closure is not universal"))
}

/// Re-checks a single-word witness against both conditions.
pub fn validate_subseq_word(k: &Nfa, l: &Nfa, w: &Word) -> bool {
    let ambient = ambient_of(k, l);
    covered_by(k, w, ambient) && avoids(w, l, ambient)
}

/// Re-checks a union witness: the separator contains K and misses L, and
/// every listed word is a ≼-minimal word of K.
pub fn validate_subseq_closure(k: &Nfa, l: &Nfa, closure: &Nfa, minimal: &[Word]) -> Result<bool> {
    let ambient = ambient_of(k, l).union(closure.alphabet());
    let outside = closure.complement_bounded(ambient, 1 << 14)?;
    let minimal_ok = minimal.iter().all(|w| {
        k.accepts(w)
            && k.intersect(&subsequences_of(w))
                .enumerate_words(w.len())
                .iter()
                .all(|v| v == w)
    });
    Ok(k.intersect(&outside).is_empty() && closure.intersect(l).is_empty() && minimal_ok)
}
