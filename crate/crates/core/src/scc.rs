//! Strongly connected components of an automaton's transition graph.

use crate::nfa::{Nfa, StateId};
use crate::symbol::SymbolSet;

/// Tarjan decomposition of an automaton's states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    /// Components in topological order: every transition goes from a
    /// component to itself or to a later one.
    components: Vec<Vec<StateId>>,
    /// Labels of transitions whose source and target both lie in the
    /// component.
    component_alphabet: Vec<SymbolSet>,
    /// A component is nontrivial when it contains at least one transition.
    nontrivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn compute(a: &Nfa) -> SccDecomposition {
        let n = a.state_count();
        let raw = tarjan(n, |v| a.transitions_from(v).iter().map(|&(_, t)| t));
        // Tarjan emits components sinks first.
        let components: Vec<Vec<StateId>> = raw.into_iter().rev().collect();
        let mut component_of = vec![0; n];
        for (c, states) in components.iter().enumerate() {
            for &q in states {
                component_of[q] = c;
            }
        }
        let mut component_alphabet = vec![SymbolSet::EMPTY; components.len()];
        let mut nontrivial = vec![false; components.len()];
        for p in 0..n {
            for &(s, q) in a.transitions_from(p) {
                let c = component_of[p];
                if component_of[q] == c {
                    component_alphabet[c].insert(s);
                    nontrivial[c] = true;
                }
            }
        }
        SccDecomposition {
            component_of,
            components,
            component_alphabet,
            nontrivial,
        }
    }

    pub fn component_of(&self, q: StateId) -> usize {
        self.component_of[q]
    }

    pub fn components(&self) -> &[Vec<StateId>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn alphabet(&self, component: usize) -> SymbolSet {
        self.component_alphabet[component]
    }

    /// Alphabet of the component containing `q`.
    pub fn alphabet_of_state(&self, q: StateId) -> SymbolSet {
        self.component_alphabet[self.component_of[q]]
    }

    pub fn is_nontrivial(&self, component: usize) -> bool {
        self.nontrivial[component]
    }

    /// Whether `q` lies on a cycle.
    pub fn on_cycle(&self, q: StateId) -> bool {
        self.nontrivial[self.component_of[q]]
    }
}

/// Iterative Tarjan. Components are returned in reverse topological order.
pub(crate) fn tarjan<F, I>(n: usize, successors: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, successor list, position in list)
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, successors(root).collect(), 0));

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, successors(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}
