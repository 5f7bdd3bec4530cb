//! Nondeterministic finite automata without ε-transitions.
//!
//! An [`Nfa`] is immutable once built. All operations return new automata.
//! Several initial states are allowed so that reversal stays ε-free.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::scc::SccDecomposition;
use crate::symbol::{Alphabet, Symbol, SymbolSet, Word};

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    /// Outgoing transitions per state, sorted by (symbol, target), no duplicates.
    delta: Vec<Vec<(Symbol, StateId)>>,
    /// Sorted, non-empty.
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

impl Nfa {
    /// Builds an automaton, validating every index and label.
    pub fn new<T, I, F>(
        state_count: usize,
        alphabet: Alphabet,
        transitions: T,
        initial: I,
        accepting: F,
    ) -> Result<Nfa>
    where
        T: IntoIterator<Item = (StateId, Symbol, StateId)>,
        I: IntoIterator<Item = StateId>,
        F: IntoIterator<Item = StateId>,
    {
        if state_count == 0 {
            return Err(Error::InvalidAutomaton("state count must be positive".into()));
        }
        let check = |q: StateId, what: &str| {
            if q >= state_count {
                Err(Error::InvalidAutomaton(format!(
                    "{what} state {q} out of range (states {state_count})"
                )))
            } else {
                Ok(())
            }
        };
        let mut delta = vec![Vec::new(); state_count];
        for (p, s, q) in transitions {
            check(p, "transition source")?;
            check(q, "transition target")?;
            if !alphabet.contains(s) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition label {s} not in alphabet {alphabet}"
                )));
            }
            delta[p].push((s, q));
        }
        for row in &mut delta {
            row.sort_unstable();
            row.dedup();
        }
        let mut init = Vec::new();
        for q in initial {
            check(q, "initial")?;
            init.push(q);
        }
        init.sort_unstable();
        init.dedup();
        if init.is_empty() {
            return Err(Error::InvalidAutomaton("no initial state".into()));
        }
        let mut acc = vec![false; state_count];
        for q in accepting {
            check(q, "accepting")?;
            acc[q] = true;
        }
        Ok(Nfa {
            alphabet,
            delta,
            initial: init,
            accepting: acc,
        })
    }

    fn from_parts(
        alphabet: Alphabet,
        mut delta: Vec<Vec<(Symbol, StateId)>>,
        mut initial: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Nfa {
        for row in &mut delta {
            row.sort_unstable();
            row.dedup();
        }
        initial.sort_unstable();
        initial.dedup();
        debug_assert!(!initial.is_empty());
        debug_assert_eq!(delta.len(), accepting.len());
        Nfa {
            alphabet,
            delta,
            initial,
            accepting,
        }
    }

    /// One non-accepting state: the empty language.
    pub fn empty_language(alphabet: Alphabet) -> Nfa {
        Nfa::from_parts(alphabet, vec![Vec::new()], vec![0], vec![false])
    }

    /// Automaton accepting exactly `w`.
    pub fn single_word(w: &Word, alphabet: Alphabet) -> Nfa {
        Nfa::from_words(std::slice::from_ref(w), alphabet)
    }

    /// Prefix-tree automaton accepting exactly the given words.
    pub fn from_words(words: &[Word], alphabet: Alphabet) -> Nfa {
        let alphabet = words.iter().fold(alphabet, |acc, w| acc.union(w.alphabet()));
        let mut delta: Vec<Vec<(Symbol, StateId)>> = vec![Vec::new()];
        let mut accepting = vec![false];
        for w in words {
            let mut q = 0;
            for &s in w.symbols() {
                q = match delta[q].iter().find(|&&(t, _)| t == s) {
                    Some(&(_, next)) => next,
                    None => {
                        delta.push(Vec::new());
                        accepting.push(false);
                        let next = delta.len() - 1;
                        delta[q].push((s, next));
                        next
                    }
                };
            }
            accepting[q] = true;
        }
        Nfa::from_parts(alphabet, delta, vec![0], accepting)
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn transitions_from(&self, q: StateId) -> &[(Symbol, StateId)] {
        &self.delta[q]
    }

    /// All transitions in canonical (source, symbol, target) order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |&(s, q)| (p, s, q)))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// Labels that actually occur on transitions.
    pub fn used_symbols(&self) -> SymbolSet {
        self.transitions().map(|(_, s, _)| s).collect()
    }

    pub fn successors(&self, q: StateId, s: Symbol) -> impl Iterator<Item = StateId> + '_ {
        self.delta[q]
            .iter()
            .filter(move |&&(t, _)| t == s)
            .map(|&(_, r)| r)
    }

    /// Whether every state has exactly one transition per alphabet symbol and
    /// there is a single initial state.
    pub fn is_complete_dfa(&self) -> bool {
        self.initial.len() == 1
            && self.delta.iter().all(|row| {
                row.len() == self.alphabet.len()
                    && row.windows(2).all(|w| w[0].0 != w[1].0)
                    && row.iter().all(|&(s, _)| self.alphabet.contains(s))
            })
    }

    /// Same automaton over a larger alphabet.
    pub fn with_alphabet(&self, ambient: Alphabet) -> Nfa {
        let mut out = self.clone();
        out.alphabet = out.alphabet.union(ambient);
        out
    }

    fn step(&self, from: &[bool], s: Symbol, into: &mut [bool]) {
        into.iter_mut().for_each(|x| *x = false);
        for (p, _) in from.iter().enumerate().filter(|(_, &on)| on) {
            for q in self.successors(p, s) {
                into[q] = true;
            }
        }
    }

    /// Whether some accepting run on `w` exists.
    pub fn accepts(&self, w: &Word) -> bool {
        let n = self.state_count();
        let mut cur = vec![false; n];
        for &q in &self.initial {
            cur[q] = true;
        }
        let mut next = vec![false; n];
        for &s in w.symbols() {
            self.step(&cur, s, &mut next);
            std::mem::swap(&mut cur, &mut next);
            if !cur.iter().any(|&x| x) {
                return false;
            }
        }
        cur.iter().zip(&self.accepting).any(|(&on, &acc)| on && acc)
    }

    /// Product automaton over the union of both alphabets; only reachable
    /// pairs are built.
    pub fn intersect(&self, other: &Nfa) -> Nfa {
        let alphabet = self.alphabet.union(other.alphabet);
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = Vec::new();
        let mut queue = VecDeque::new();
        let mut intern = |p: (StateId, StateId),
                          pairs: &mut Vec<(StateId, StateId)>,
                          queue: &mut VecDeque<StateId>| {
            *index.entry(p).or_insert_with(|| {
                pairs.push(p);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            })
        };
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                initial.push(intern((p, q), &mut pairs, &mut queue));
            }
        }
        let mut delta: Vec<Vec<(Symbol, StateId)>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let (p, q) = pairs[i];
            let mut row = Vec::new();
            for &(s, p2) in &self.delta[p] {
                for &(t, q2) in &other.delta[q] {
                    if s == t {
                        row.push((s, intern((p2, q2), &mut pairs, &mut queue)));
                    }
                }
            }
            if delta.len() <= i {
                delta.resize(i + 1, Vec::new());
            }
            delta[i] = row;
        }
        delta.resize(pairs.len(), Vec::new());
        let accepting = pairs
            .iter()
            .map(|&(p, q)| self.accepting[p] && other.accepting[q])
            .collect();
        Nfa::from_parts(alphabet, delta, initial, accepting)
    }

    /// Disjoint union (initial states of both are kept).
    pub fn union(&self, other: &Nfa) -> Nfa {
        let offset = self.state_count();
        let mut delta = self.delta.clone();
        delta.extend(
            other
                .delta
                .iter()
                .map(|row| row.iter().map(|&(s, q)| (s, q + offset)).collect()),
        );
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|q| q + offset));
        let mut accepting = self.accepting.clone();
        accepting.extend_from_slice(&other.accepting);
        Nfa::from_parts(
            self.alphabet.union(other.alphabet),
            delta,
            initial,
            accepting,
        )
    }

    /// Automaton for the reversed language: transitions flipped, initial and
    /// accepting roles swapped. Without accepting states the result gets a
    /// fresh isolated initial state.
    pub fn reverse(&self) -> Nfa {
        let n = self.state_count();
        let mut delta = vec![Vec::new(); n];
        for (p, s, q) in self.transitions() {
            delta[q].push((s, p));
        }
        let mut initial: Vec<StateId> = self.accepting_states().collect();
        let mut accepting = vec![false; n];
        for &q in &self.initial {
            accepting[q] = true;
        }
        if initial.is_empty() {
            delta.push(Vec::new());
            accepting.push(false);
            initial.push(n);
        }
        Nfa::from_parts(self.alphabet, delta, initial, accepting)
    }

    /// Automaton for all prefixes of accepted words: exactly the states that
    /// can still reach acceptance become accepting.
    pub fn prefixes(&self) -> Nfa {
        let mut out = self.clone();
        out.accepting = self.coreachable();
        out
    }

    /// `closure≼(L)` relative to `ambient`: a self-loop on every ambient
    /// symbol at every state.
    pub fn upward_subseq_closure(&self, ambient: Alphabet) -> Nfa {
        let alphabet = self.alphabet.union(ambient);
        let mut delta = self.delta.clone();
        for (q, row) in delta.iter_mut().enumerate() {
            row.extend(alphabet.iter().map(|s| (s, q)));
        }
        Nfa::from_parts(alphabet, delta, self.initial.clone(), self.accepting.clone())
    }

    /// `Σ*·L` relative to `ambient`: a self-loop on every ambient symbol at
    /// every initial state.
    pub fn upward_suffix_closure(&self, ambient: Alphabet) -> Nfa {
        let alphabet = self.alphabet.union(ambient);
        let mut delta = self.delta.clone();
        for &q in &self.initial {
            delta[q].extend(alphabet.iter().map(|s| (s, q)));
        }
        Nfa::from_parts(alphabet, delta, self.initial.clone(), self.accepting.clone())
    }

    /// Same states, only transitions labelled in `allowed`.
    pub fn restrict(&self, allowed: SymbolSet) -> Nfa {
        let delta = self
            .delta
            .iter()
            .map(|row| row.iter().copied().filter(|&(s, _)| allowed.contains(s)).collect())
            .collect();
        Nfa::from_parts(self.alphabet, delta, self.initial.clone(), self.accepting.clone())
    }

    /// States reachable from an initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<StateId> = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.delta[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// States from which an accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States that are both reachable and co-reachable.
    pub fn useful(&self) -> Vec<bool> {
        self.reachable()
            .into_iter()
            .zip(self.coreachable())
            .map(|(r, c)| r && c)
            .collect()
    }

    /// Restriction to useful states. An empty language yields
    /// [`Nfa::empty_language`].
    pub fn trim(&self) -> Nfa {
        let useful = self.useful();
        let mut map = vec![usize::MAX; self.state_count()];
        let mut next = 0;
        for (q, &u) in useful.iter().enumerate() {
            if u {
                map[q] = next;
                next += 1;
            }
        }
        if next == 0 {
            return Nfa::empty_language(self.alphabet);
        }
        let mut delta = vec![Vec::new(); next];
        for (p, s, q) in self.transitions() {
            if useful[p] && useful[q] {
                delta[map[p]].push((s, map[q]));
            }
        }
        let initial = self
            .initial
            .iter()
            .filter(|&&q| useful[q])
            .map(|&q| map[q])
            .collect();
        let mut accepting = vec![false; next];
        for q in self.accepting_states().filter(|&q| useful[q]) {
            accepting[map[q]] = true;
        }
        Nfa::from_parts(self.alphabet, delta, initial, accepting)
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !reach.iter().zip(&self.accepting).any(|(&r, &a)| r && a)
    }

    /// Whether the language is infinite, i.e. the trimmed automaton has a
    /// cycle.
    pub fn is_infinite(&self) -> bool {
        let trimmed = self.trim();
        if trimmed.is_empty() {
            return false;
        }
        let scc = SccDecomposition::compute(&trimmed);
        (0..scc.len()).any(|c| scc.is_nontrivial(c))
    }

    /// Length of the longest accepted word, `None` if the language is empty
    /// or infinite.
    pub fn longest_word_len(&self) -> Option<usize> {
        let trimmed = self.trim();
        if trimmed.is_empty() || trimmed.is_infinite() {
            return None;
        }
        let scc = SccDecomposition::compute(&trimmed);
        // Acyclic: components are single states in topological order.
        let mut best = vec![None::<usize>; trimmed.state_count()];
        for comp in scc.components().iter().rev() {
            let p = comp[0];
            let mut b = trimmed.accepting[p].then_some(0);
            for &(_, q) in &trimmed.delta[p] {
                if let Some(l) = best[q] {
                    b = Some(b.map_or(l + 1, |x: usize| x.max(l + 1)));
                }
            }
            best[p] = b;
        }
        trimmed.initial.iter().filter_map(|&q| best[q]).max()
    }

    /// BFS distance from each state to acceptance.
    fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let n = self.state_count();
        let mut rev = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for q in self.accepting_states() {
            dist[q] = Some(0);
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &p in &rev[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// The shortlex-least accepted word, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        let dist = self.distance_to_accept();
        let best = |set: &[StateId]| set.iter().filter_map(|&q| dist[q]).min();
        let mut cur = self.initial.clone();
        let mut remaining = best(&cur)?;
        let mut word = Word::epsilon();
        while remaining > 0 {
            // Smallest symbol that keeps a shortest completion available.
            let (s, next) = self
                .alphabet
                .union(self.used_symbols())
                .iter()
                .find_map(|s| {
                    let mut next: Vec<StateId> =
                        cur.iter().flat_map(|&p| self.successors(p, s)).collect();
                    next.sort_unstable();
                    next.dedup();
                    (best(&next) == Some(remaining - 1)).then_some((s, next))
                })
                .expect("distance labelling is consistent");
            word.push(s);
            cur = next;
            remaining -= 1;
        }
        Some(word)
    }

    /// For each length `r ≤ max_len`, the states that reach acceptance in
    /// exactly `r` steps.
    fn exact_distance_sets(&self, max_len: usize) -> Vec<Vec<bool>> {
        let mut levels = vec![self.accepting.clone()];
        for r in 1..=max_len {
            let prev = &levels[r - 1];
            let row = (0..self.state_count())
                .map(|p| self.delta[p].iter().any(|&(_, q)| prev[q]))
                .collect();
            levels.push(row);
        }
        levels
    }

    /// All accepted words of length at most `max_len`, shortlex ordered.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        self.first_words(max_len, usize::MAX)
    }

    /// The first `limit` accepted words of length at most `max_len` in
    /// shortlex order. Work is proportional to the output.
    pub fn first_words(&self, max_len: usize, limit: usize) -> Vec<Word> {
        let levels = self.exact_distance_sets(max_len);
        let symbols: Vec<Symbol> = self.used_symbols().iter().collect();
        let mut out = Vec::new();
        for len in 0..=max_len {
            if out.len() >= limit {
                break;
            }
            let mut prefix = Vec::with_capacity(len);
            self.exact_words(&levels, &symbols, self.initial.clone(), len, &mut prefix, &mut out, limit);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn exact_words(
        &self,
        levels: &[Vec<bool>],
        symbols: &[Symbol],
        set: Vec<StateId>,
        remaining: usize,
        prefix: &mut Vec<Symbol>,
        out: &mut Vec<Word>,
        limit: usize,
    ) {
        if out.len() >= limit || !set.iter().any(|&q| levels[remaining][q]) {
            return;
        }
        if remaining == 0 {
            out.push(Word::new(prefix.clone()));
            return;
        }
        for &s in symbols {
            let mut next: Vec<StateId> = set.iter().flat_map(|&p| self.successors(p, s)).collect();
            next.sort_unstable();
            next.dedup();
            prefix.push(s);
            self.exact_words(levels, symbols, next, remaining - 1, prefix, out, limit);
            prefix.pop();
        }
    }

    /// Subset construction over the automaton's alphabet, producing a
    /// complete DFA (with a sink when needed). Fails once more than
    /// `state_cap` subsets appear.
    pub fn determinize_bounded(&self, state_cap: usize) -> Result<Nfa> {
        let symbols: Vec<Symbol> = self.alphabet.iter().collect();
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        let mut delta: Vec<Vec<(Symbol, StateId)>> = Vec::new();
        let start = self.initial.clone();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(symbols.len());
            for &s in &symbols {
                let mut next: Vec<StateId> = subsets[i]
                    .iter()
                    .flat_map(|&p| self.successors(p, s))
                    .collect();
                next.sort_unstable();
                next.dedup();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= state_cap {
                            return Err(Error::CapExceeded {
                                what: "subset construction",
                                cap: state_cap,
                            });
                        }
                        index.insert(next.clone(), subsets.len());
                        subsets.push(next);
                        subsets.len() - 1
                    }
                };
                row.push((s, id));
            }
            delta.push(row);
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        Ok(Nfa::from_parts(self.alphabet, delta, vec![0], accepting))
    }

    /// Flips acceptance of a complete DFA. Errors on any other input.
    pub fn complement_dfa(&self) -> Result<Nfa> {
        if !self.is_complete_dfa() {
            return Err(Error::InvalidAutomaton(
                "complementation requires a complete DFA".into(),
            ));
        }
        let mut out = self.clone();
        out.accepting.iter_mut().for_each(|a| *a = !*a);
        Ok(out)
    }

    /// Bounded complement relative to `ambient`.
    pub(crate) fn complement_bounded(&self, ambient: Alphabet, state_cap: usize) -> Result<Nfa> {
        self.with_alphabet(ambient)
            .determinize_bounded(state_cap)?
            .complement_dfa()
    }

    /// Shortlex-least accepted word of length at least `min_len`.
    pub fn shortest_word_at_least(&self, min_len: usize) -> Option<Word> {
        // Product with a saturating length counter.
        let n = self.state_count();
        let k = min_len + 1;
        let mut delta = vec![Vec::new(); n * k];
        for (p, s, q) in self.transitions() {
            for c in 0..k {
                delta[p * k + c].push((s, q * k + (c + 1).min(min_len)));
            }
        }
        let accepting = (0..n * k)
            .map(|x| self.accepting[x / k] && x % k == min_len)
            .collect();
        let initial = self.initial.iter().map(|&q| q * k).collect();
        Nfa::from_parts(self.alphabet, delta, initial, accepting).shortest_word()
    }
}
