//! Separability by piecewise-testable languages.
//!
//! Two automata are *synchronizable* when some pair of initial states is
//! linked to a pair of accepting states by a chain of one-step
//! synchronizations, each being either
//!
//! * a shared symbol read by both automata, or
//! * a cycle synchronization: both automata move through a middle pair `V`
//!   that carries loops of exactly the same alphabet `Σ₀`, with all connecting
//!   words drawn from `Σ₀*`.
//!
//! The languages are separable by a piecewise-testable language exactly when
//! the automata are not synchronizable. Reachability is decided on the graph
//! of state pairs ([`SynchGraph`]) whose edges are one-step synchronizations;
//! for cycle edges it suffices to use, at each middle pair, the largest
//! alphabet admitting such loops ([`saturated_cycle_alphabet`]).

mod dot;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::time::Instant;

use crate::nfa::{Nfa, StateId};
use crate::scc::SccDecomposition;
use crate::symbol::{Symbol, SymbolSet};
use crate::verdict::{Certificate, Family, Verdict};

pub use dot::synch_to_dot;

/// A vertex of the synchronization graph: one state of each automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairVertex {
    pub a: StateId,
    pub b: StateId,
}

impl PairVertex {
    pub fn new(a: StateId, b: StateId) -> PairVertex {
        PairVertex { a, b }
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SynchEdge {
    /// Both automata read the same symbol.
    Symbol(Symbol),
    /// Both automata pass through `via`, which carries loops with alphabet
    /// exactly `sigma0`, using only `sigma0` symbols on the way.
    Cycle { sigma0: SymbolSet, via: PairVertex },
}

impl fmt::Display for SynchEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynchEdge::Symbol(s) => write!(f, "{s}"),
            SynchEdge::Cycle { sigma0, via } => write!(f, "Σ0={sigma0} via {via}"),
        }
    }
}

/// Non-separability certificate: a walk in the synchronization graph from
/// an initial pair to an accepting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynchPath {
    pub start: PairVertex,
    pub steps: Vec<(SynchEdge, PairVertex)>,
}

impl SynchPath {
    pub fn end(&self) -> PairVertex {
        self.steps.last().map_or(self.start, |&(_, v)| v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = PairVertex> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().map(|&(_, v)| v))
    }
}

impl fmt::Display for SynchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (e, v) in &self.steps {
            write!(f, " -[{e}]-> {v}")?;
        }
        Ok(())
    }
}

/// Reflexive-transitive reachability of `a` using only `allowed` symbols.
fn reach_matrix(a: &Nfa, allowed: SymbolSet) -> Vec<Vec<bool>> {
    let n = a.state_count();
    (0..n)
        .map(|src| {
            let mut seen = vec![false; n];
            seen[src] = true;
            let mut stack = vec![src];
            while let Some(p) = stack.pop() {
                for &(s, q) in a.transitions_from(p) {
                    if allowed.contains(s) && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
            seen
        })
        .collect()
}

/// `Σ₀`-routes: `p` reaches `q` when `q.a` is reachable from `p.a` in A and
/// `q.b` from `p.b` in B, each by its own word over `Σ₀`.
#[derive(Clone, Debug)]
pub struct SigmaRoutes {
    sigma0: SymbolSet,
    reach_a: Vec<Vec<bool>>,
    reach_b: Vec<Vec<bool>>,
}

impl SigmaRoutes {
    pub fn compute(a: &Nfa, b: &Nfa, sigma0: SymbolSet) -> SigmaRoutes {
        SigmaRoutes {
            sigma0,
            reach_a: reach_matrix(a, sigma0),
            reach_b: reach_matrix(b, sigma0),
        }
    }

    pub fn sigma0(&self) -> SymbolSet {
        self.sigma0
    }

    /// Whether there is a `Σ₀`-route from `p` to `q`.
    pub fn related(&self, p: PairVertex, q: PairVertex) -> bool {
        self.reach_a[p.a][q.a] && self.reach_b[p.b][q.b]
    }

    /// All pairs reachable from `p` by a `Σ₀`-route.
    pub fn forward(&self, p: PairVertex) -> Vec<PairVertex> {
        let xs: Vec<StateId> = (0..self.reach_a.len()).filter(|&x| self.reach_a[p.a][x]).collect();
        let ys: Vec<StateId> = (0..self.reach_b.len()).filter(|&y| self.reach_b[p.b][y]).collect();
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| PairVertex::new(x, y)))
            .collect()
    }

    /// All pairs from which `q` is reachable by a `Σ₀`-route.
    pub fn backward(&self, q: PairVertex) -> Vec<PairVertex> {
        let xs: Vec<StateId> = (0..self.reach_a.len()).filter(|&x| self.reach_a[x][q.a]).collect();
        let ys: Vec<StateId> = (0..self.reach_b.len()).filter(|&y| self.reach_b[y][q.b]).collect();
        xs.iter()
            .flat_map(|&x| ys.iter().map(move |&y| PairVertex::new(x, y)))
            .collect()
    }
}

pub fn sigma_routes(a: &Nfa, b: &Nfa, sigma0: SymbolSet) -> SigmaRoutes {
    SigmaRoutes::compute(a, b, sigma0)
}

/// Caches SCC decompositions per restriction alphabet and routes per `Σ₀`.
struct Synchronizer<'a> {
    a: &'a Nfa,
    b: &'a Nfa,
    ambient: SymbolSet,
    scc_a: HashMap<SymbolSet, SccDecomposition>,
    scc_b: HashMap<SymbolSet, SccDecomposition>,
    saturated: HashMap<PairVertex, SymbolSet>,
    routes: HashMap<SymbolSet, SigmaRoutes>,
}

impl<'a> Synchronizer<'a> {
    fn new(a: &'a Nfa, b: &'a Nfa) -> Self {
        Synchronizer {
            a,
            b,
            ambient: a.alphabet().union(b.alphabet()),
            scc_a: HashMap::new(),
            scc_b: HashMap::new(),
            saturated: HashMap::new(),
            routes: HashMap::new(),
        }
    }

    fn saturated(&mut self, v: PairVertex) -> SymbolSet {
        if let Some(&s) = self.saturated.get(&v) {
            return s;
        }
        let mut sigma = self.ambient;
        let result = loop {
            let (a, b) = (self.a, self.b);
            let alph_a = self
                .scc_a
                .entry(sigma)
                .or_insert_with(|| SccDecomposition::compute(&a.restrict(sigma)))
                .alphabet_of_state(v.a);
            let alph_b = self
                .scc_b
                .entry(sigma)
                .or_insert_with(|| SccDecomposition::compute(&b.restrict(sigma)))
                .alphabet_of_state(v.b);
            if alph_a == alph_b {
                break alph_a;
            }
            // strictly smaller than sigma, so this terminates
            sigma = alph_a.intersection(alph_b);
        };
        self.saturated.insert(v, result);
        result
    }

    fn routes(&mut self, sigma0: SymbolSet) -> &SigmaRoutes {
        let (a, b) = (self.a, self.b);
        self.routes
            .entry(sigma0)
            .or_insert_with(|| SigmaRoutes::compute(a, b, sigma0))
    }

    fn initial_pairs(&self) -> Vec<PairVertex> {
        let mut out = Vec::new();
        for &p in self.a.initial() {
            for &q in self.b.initial() {
                out.push(PairVertex::new(p, q));
            }
        }
        out
    }

    fn is_accepting(&self, v: PairVertex) -> bool {
        self.a.is_accepting(v.a) && self.b.is_accepting(v.b)
    }

    fn symbol_successors(&self, v: PairVertex) -> Vec<(Symbol, PairVertex)> {
        let mut out = Vec::new();
        for &(s, p) in self.a.transitions_from(v.a) {
            for &(t, q) in self.b.transitions_from(v.b) {
                if s == t {
                    out.push((s, PairVertex::new(p, q)));
                }
            }
        }
        out
    }
}

/// The largest `Σ₀` such that `v.a` has a loop in A and `v.b` a loop in B,
/// both with alphabet exactly `Σ₀`; empty if there is none.
pub fn saturated_cycle_alphabet(a: &Nfa, b: &Nfa, v: PairVertex) -> SymbolSet {
    Synchronizer::new(a, b).saturated(v)
}

/// Explicit synchronization graph over all state pairs.
#[derive(Clone, Debug, Default)]
pub struct SynchGraph {
    pub state_counts: (usize, usize),
    pub initial: Vec<PairVertex>,
    pub accepting: Vec<PairVertex>,
    pub symbol_edges: BTreeSet<(PairVertex, Symbol, PairVertex)>,
    /// `(from, to, Σ₀) → via`; one representative middle pair per edge.
    pub cycle_edges: BTreeMap<(PairVertex, PairVertex, SymbolSet), PairVertex>,
    /// Saturated cycle alphabet of every pair where it is nonempty.
    pub saturated_alphabet: BTreeMap<PairVertex, SymbolSet>,
}

impl SynchGraph {
    pub fn vertices(&self) -> impl Iterator<Item = PairVertex> + '_ {
        let (na, nb) = self.state_counts;
        (0..na).flat_map(move |a| (0..nb).map(move |b| PairVertex::new(a, b)))
    }

    /// Successors with their edge descriptors, in deterministic order.
    pub fn edges_from(&self, v: PairVertex) -> Vec<(SynchEdge, PairVertex)> {
        let mut out: Vec<(SynchEdge, PairVertex)> = self
            .symbol_edges
            .range((v, Symbol::from_id(0).unwrap(), PairVertex::new(0, 0))..)
            .take_while(|(p, _, _)| *p == v)
            .map(|&(_, s, q)| (SynchEdge::Symbol(s), q))
            .collect();
        out.extend(
            self.cycle_edges
                .range((v, PairVertex::new(0, 0), SymbolSet::EMPTY)..)
                .take_while(|((p, _, _), _)| *p == v)
                .map(|(&(_, q, sigma0), &via)| (SynchEdge::Cycle { sigma0, via }, q)),
        );
        out
    }

    /// Breadth-first search from the initial pairs to an accepting pair.
    pub fn find_path(&self) -> Option<SynchPath> {
        let accepting: HashSet<PairVertex> = self.accepting.iter().copied().collect();
        let mut parent: HashMap<PairVertex, Option<(PairVertex, SynchEdge)>> = HashMap::new();
        let mut queue = VecDeque::new();
        for &v in &self.initial {
            parent.entry(v).or_insert_with(|| {
                queue.push_back(v);
                None
            });
        }
        while let Some(v) = queue.pop_front() {
            if accepting.contains(&v) {
                return Some(rebuild(&parent, v));
            }
            for (e, q) in self.edges_from(v) {
                parent.entry(q).or_insert_with(|| {
                    queue.push_back(q);
                    Some((v, e))
                });
            }
        }
        None
    }
}

fn rebuild(parent: &HashMap<PairVertex, Option<(PairVertex, SynchEdge)>>, end: PairVertex) -> SynchPath {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(&Some((prev, e))) = parent.get(&cur) {
        steps.push((e, cur));
        cur = prev;
    }
    steps.reverse();
    SynchPath { start: cur, steps }
}

/// Materializes the whole graph. Quartic in the number of states; meant for
/// inspection and export, [`decide_pt`] explores lazily instead.
pub fn build_synch_graph(a: &Nfa, b: &Nfa) -> SynchGraph {
    let mut sync = Synchronizer::new(a, b);
    let mut g = SynchGraph {
        state_counts: (a.state_count(), b.state_count()),
        initial: sync.initial_pairs(),
        ..SynchGraph::default()
    };
    let all: Vec<PairVertex> = g.vertices().collect();
    let mut groups: BTreeMap<SymbolSet, Vec<PairVertex>> = BTreeMap::new();
    for &v in &all {
        if sync.is_accepting(v) {
            g.accepting.push(v);
        }
        for (s, q) in sync.symbol_successors(v) {
            g.symbol_edges.insert((v, s, q));
        }
        let sigma0 = sync.saturated(v);
        if !sigma0.is_empty() {
            g.saturated_alphabet.insert(v, sigma0);
            groups.entry(sigma0).or_default().push(v);
        }
    }
    for (sigma0, middles) in groups {
        let routes = sync.routes(sigma0);
        for via in middles {
            let sources = routes.backward(via);
            let targets = routes.forward(via);
            for &p in &sources {
                for &q in &targets {
                    g.cycle_edges.entry((p, q, sigma0)).or_insert(via);
                }
            }
        }
    }
    g
}

/// Decides separability of `L(a)` and `L(b)` by a piecewise-testable
/// language. When not separable, the certificate is a [`SynchPath`].
/// No separator is constructed when separable.
pub fn decide_pt(a: &Nfa, b: &Nfa) -> Verdict {
    let start = Instant::now();
    let mut sync = Synchronizer::new(a, b);
    let ambient = sync.ambient;
    let full_a = reach_matrix(a, ambient);
    let full_b = reach_matrix(b, ambient);
    let loops_a: Vec<StateId> = {
        let scc = SccDecomposition::compute(a);
        (0..a.state_count()).filter(|&q| scc.on_cycle(q)).collect()
    };
    let loops_b: Vec<StateId> = {
        let scc = SccDecomposition::compute(b);
        (0..b.state_count()).filter(|&q| scc.on_cycle(q)).collect()
    };

    let mut parent: HashMap<PairVertex, Option<(PairVertex, SynchEdge)>> = HashMap::new();
    let mut expanded: HashSet<PairVertex> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut found = None;
    for v in sync.initial_pairs() {
        if parent.insert(v, None).is_none() {
            queue.push_back(v);
        }
    }

    'search: while let Some(v) = queue.pop_front() {
        if sync.is_accepting(v) {
            found = Some(v);
            break;
        }
        let mut discovered: Vec<(SynchEdge, PairVertex)> = sync
            .symbol_successors(v)
            .into_iter()
            .map(|(s, q)| (SynchEdge::Symbol(s), q))
            .collect();
        // Cycle edges v → q via a middle pair m. Every q reachable through m
        // is the same whichever source reached m, so each m is expanded once.
        for &ma in loops_a.iter().filter(|&&x| full_a[v.a][x]) {
            for &mb in loops_b.iter().filter(|&&y| full_b[v.b][y]) {
                let via = PairVertex::new(ma, mb);
                if expanded.contains(&via) {
                    continue;
                }
                let sigma0 = sync.saturated(via);
                if sigma0.is_empty() {
                    expanded.insert(via);
                    continue;
                }
                let routes = sync.routes(sigma0);
                if !routes.related(v, via) {
                    continue;
                }
                expanded.insert(via);
                let edge = SynchEdge::Cycle { sigma0, via };
                discovered.extend(routes.forward(via).into_iter().map(|q| (edge, q)));
            }
        }
        for (e, q) in discovered {
            if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(q) {
                slot.insert(Some((v, e)));
                if sync.is_accepting(q) {
                    found = Some(q);
                    break 'search;
                }
                queue.push_back(q);
            }
        }
    }

    let mut verdict = match found {
        Some(end) => Verdict::not_separable(
            Family::Pt,
            Some(Certificate::SynchPath(rebuild(&parent, end))),
        ),
        None => Verdict::separable(Family::Pt, None),
    };
    verdict.stats.vertices = parent.len();
    verdict.timed(start)
}

/// Re-checks a certificate edge by edge against the definitions of
/// one-step synchronization.
pub fn validate_synch_path(a: &Nfa, b: &Nfa, path: &SynchPath) -> Result<(), String> {
    let in_range = |v: PairVertex| v.a < a.state_count() && v.b < b.state_count();
    if !path.vertices().all(in_range) {
        return Err("vertex out of range".into());
    }
    if !a.initial().contains(&path.start.a) || !b.initial().contains(&path.start.b) {
        return Err(format!("{} is not an initial pair", path.start));
    }
    let end = path.end();
    if !a.is_accepting(end.a) || !b.is_accepting(end.b) {
        return Err(format!("{end} is not an accepting pair"));
    }
    let mut prev = path.start;
    for &(edge, next) in &path.steps {
        match edge {
            SynchEdge::Symbol(s) => {
                let ok_a = a.successors(prev.a, s).any(|q| q == next.a);
                let ok_b = b.successors(prev.b, s).any(|q| q == next.b);
                if !(ok_a && ok_b) {
                    return Err(format!("{prev} -{s}-> {next} is not a transition pair"));
                }
            }
            SynchEdge::Cycle { sigma0, via } => {
                if !in_range(via) {
                    return Err("middle pair out of range".into());
                }
                if sigma0.is_empty() || saturated_cycle_alphabet(a, b, via) != sigma0 {
                    return Err(format!("{via} has no saturated {sigma0}-cycle"));
                }
                let routes = sigma_routes(a, b, sigma0);
                if !routes.related(prev, via) || !routes.related(via, next) {
                    return Err(format!("no {sigma0}-route {prev} → {via} → {next}"));
                }
            }
        }
        prev = next;
    }
    Ok(())
}
