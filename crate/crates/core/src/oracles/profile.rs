use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};
use crate::symbol::{Symbol, Word};
use crate::verdict::Limits;

/// The subsequences of a word of length at most `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubseqProfile {
    pub n: usize,
    pub subseqs: BTreeSet<Word>,
}

impl SubseqProfile {
    pub fn contains(&self, v: &Word) -> bool {
        self.subseqs.contains(v)
    }
}

pub fn subseq_profile(w: &Word, n: usize) -> SubseqProfile {
    let mut subseqs = BTreeSet::from([Word::epsilon()]);
    for &s in w.symbols() {
        let extended: Vec<Word> = subseqs
            .iter()
            .filter(|v| v.len() < n)
            .map(|v| {
                let mut v = v.clone();
                v.push(s);
                v
            })
            .collect();
        subseqs.extend(extended);
    }
    SubseqProfile { n, subseqs }
}

type Bits = Vec<u64>;

/// Indexes `Σ^{≤n}` so profiles become bitsets.
struct ProfileSpace {
    n: usize,
    words: Vec<Word>,
    symbol_index: HashMap<Symbol, usize>,
    /// Per symbol `s`: pairs `(v, v·s)` for `|v| < n`.
    extend: Vec<Vec<(usize, usize)>>,
}

impl ProfileSpace {
    fn new(symbols: &[Symbol], n: usize) -> ProfileSpace {
        let mut words = vec![Word::epsilon()];
        let mut extend = vec![Vec::new(); symbols.len()];
        let mut i = 0;
        while i < words.len() {
            if words[i].len() < n {
                for (j, &s) in symbols.iter().enumerate() {
                    let mut w = words[i].clone();
                    w.push(s);
                    extend[j].push((i, words.len()));
                    words.push(w);
                }
            }
            i += 1;
        }
        let symbol_index = symbols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        ProfileSpace {
            n,
            words,
            symbol_index,
            extend,
        }
    }

    fn empty_word_profile(&self) -> Bits {
        let mut bits = vec![0u64; self.words.len().div_ceil(64)];
        bits[0] = 1;
        bits
    }

    fn step(&self, p: &Bits, s: Symbol) -> Bits {
        let mut out = p.clone();
        let get = |b: &Bits, i: usize| b[i / 64] >> (i % 64) & 1 == 1;
        for &(v, va) in &self.extend[self.symbol_index[&s]] {
            if get(p, v) {
                out[va / 64] |= 1 << (va % 64);
            }
        }
        out
    }

    fn to_profile(&self, bits: &Bits) -> SubseqProfile {
        let subseqs = (0..self.words.len())
            .filter(|&i| bits[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| self.words[i].clone())
            .collect();
        SubseqProfile { n: self.n, subseqs }
    }

    /// Profiles realized by accepted words, each with a shortest such word.
    fn realized(&self, a: &Nfa, budget: &mut usize, limits: &Limits) -> Result<BTreeMap<Bits, Word>> {
        let mut profiles: Vec<Bits> = Vec::new();
        let mut profile_id: HashMap<Bits, usize> = HashMap::new();
        let mut steps: HashMap<(usize, Symbol), usize> = HashMap::new();
        let mut node_id: HashMap<(usize, StateId), usize> = HashMap::new();
        let mut nodes: Vec<(usize, StateId)> = Vec::new();
        let mut parent: Vec<Option<(usize, Symbol)>> = Vec::new();
        let mut queue = VecDeque::new();
        let mut out = BTreeMap::new();

        let start = self.empty_word_profile();
        profile_id.insert(start.clone(), 0);
        profiles.push(start);
        for &q in a.initial() {
            if node_id.insert((0, q), nodes.len()).is_none() {
                queue.push_back(nodes.len());
                nodes.push((0, q));
                parent.push(None);
            }
        }
        while let Some(x) = queue.pop_front() {
            if x % 1024 == 0 {
                limits.check_deadline()?;
            }
            let (pid, q) = nodes[x];
            if a.is_accepting(q) && !out.contains_key(&profiles[pid]) {
                let mut word = Vec::new();
                let mut cur = x;
                while let Some((prev, s)) = parent[cur] {
                    word.push(s);
                    cur = prev;
                }
                word.reverse();
                out.insert(profiles[pid].clone(), Word::new(word));
            }
            for &(s, r) in a.transitions_from(q) {
                let next_pid = match steps.get(&(pid, s)) {
                    Some(&id) => id,
                    None => {
                        let bits = self.step(&profiles[pid], s);
                        let id = *profile_id.entry(bits.clone()).or_insert_with(|| {
                            profiles.push(bits);
                            profiles.len() - 1
                        });
                        steps.insert((pid, s), id);
                        id
                    }
                };
                if let std::collections::hash_map::Entry::Vacant(e) = node_id.entry((next_pid, r)) {
                    if *budget == 0 {
                        return Err(Error::CapExceeded {
                            what: "subsequence profiles",
                            cap: limits.profile_cap,
                        });
                    }
                    *budget -= 1;
                    e.insert(nodes.len());
                    queue.push_back(nodes.len());
                    nodes.push((next_pid, r));
                    parent.push(Some((x, s)));
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of comparing the level-`n` profiles realized by K and by L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSeparation {
    pub level: usize,
    /// No K-word shares its profile with an L-word.
    pub separable: bool,
    /// Profiles realized by K. When separable, the union of their classes
    /// is a piecewise-testable separator.
    pub k_profiles: Vec<SubseqProfile>,
    /// A K-word and an L-word with equal profiles, when not separable.
    pub cross_pair: Option<(Word, Word)>,
}

/// Level-`n` test: K and L are separable by a boolean combination of
/// subsequence languages with words up to length `n` iff no K-word and
/// L-word have the same profile.
pub fn simon_level_sep(k: &Nfa, l: &Nfa, n: usize, limits: &Limits) -> Result<LevelSeparation> {
    let symbols: Vec<Symbol> = k.alphabet().union(l.alphabet()).iter().collect();
    let space = ProfileSpace::new(&symbols, n);
    let mut budget = limits.profile_cap;
    let pk = space.realized(k, &mut budget, limits)?;
    let pl = space.realized(l, &mut budget, limits)?;
    let cross_pair = pk
        .iter()
        .find_map(|(bits, u)| pl.get(bits).map(|v| (u.clone(), v.clone())));
    Ok(LevelSeparation {
        level: n,
        separable: cross_pair.is_none(),
        k_profiles: pk.keys().map(|b| space.to_profile(b)).collect(),
        cross_pair,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PtOracle {
    /// `separable` at the given level; non-separability is only reported
    /// as conclusive when the languages share a word.
    Conclusive { separable: bool, level: usize },
    /// Cross pairs with equal profiles exist at every level up to `level`.
    /// Necessary for non-separability, never a proof of it.
    NecessaryConditionHolds { level: usize },
    Inconclusive(String),
}

/// Tries levels `0..=max_level` and reports the first separating one.
pub fn pt_oracle(k: &Nfa, l: &Nfa, max_level: usize, limits: &Limits) -> PtOracle {
    if !k.intersect(l).is_empty() {
        return PtOracle::Conclusive {
            separable: false,
            level: 0,
        };
    }
    for n in 0..=max_level {
        match simon_level_sep(k, l, n, limits) {
            Ok(r) if r.separable => {
                return PtOracle::Conclusive {
                    separable: true,
                    level: n,
                }
            }
            Ok(_) => {}
            Err(e) => return PtOracle::Inconclusive(e.to_string()),
        }
    }
    PtOracle::NecessaryConditionHolds { level: max_level }
}
