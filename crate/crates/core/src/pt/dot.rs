use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{PairVertex, SynchGraph};
use crate::nfa::Nfa;

fn node_id(v: PairVertex) -> String {
    format!("\"{}_{}\"", v.a, v.b)
}

/// Graphviz rendering of a synchronization graph. Output order is fixed by
/// the graph's sorted edge sets, so equal graphs print identically.
/// Initial pairs get a bold outline, accepting pairs a double circle.
pub fn synch_to_dot(g: &SynchGraph, a: &Nfa, b: &Nfa) -> String {
    let initial: BTreeSet<PairVertex> = g.initial.iter().copied().collect();
    let accepting: BTreeSet<PairVertex> = g.accepting.iter().copied().collect();
    let mut out = String::from("digraph synch {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in g.vertices() {
        let mut attrs = vec![format!("label=\"{v}\"")];
        if accepting.contains(&v) {
            attrs.push("shape=doublecircle".into());
        }
        if initial.contains(&v) {
            attrs.push("style=bold".into());
            attrs.push("color=blue".into());
        }
        if let Some(s) = g.saturated_alphabet.get(&v) {
            attrs.push(format!("tooltip=\"Σ0={s}\""));
        }
        writeln!(out, "  {} [{}];", node_id(v), attrs.join(", ")).unwrap();
    }
    for &(p, s, q) in &g.symbol_edges {
        writeln!(out, "  {} -> {} [label=\"{s}\"];", node_id(p), node_id(q)).unwrap();
    }
    for (&(p, q, sigma0), &via) in &g.cycle_edges {
        writeln!(
            out,
            "  {} -> {} [label=\"Σ0={sigma0} via {via}\", style=dashed];",
            node_id(p),
            node_id(q)
        )
        .unwrap();
    }
    writeln!(
        out,
        "  label=\"A: {} states, B: {} states\";",
        a.state_count(),
        b.state_count()
    )
    .unwrap();
    out.push_str("}\n");
    out
}
