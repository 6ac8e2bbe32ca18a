//! DOT and plain-text renderings of the two graphs the library draws: the
//! Hasse diagram of a poset and the induced permutohedral subgraph of an
//! enumeration set. Output is stable: nodes in lexicographic order, edges
//! sorted.

use crate::enumerations::{adjacency, Enumeration};
use crate::extensions::EnumSet;
use crate::relations::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The covering arrows of a poset, one `u -> v` line each.
pub fn hasse_edges(p: &Poset) -> String {
    let cover = p.cover_relation();
    let mut out = String::new();
    for (u, v) in cover.pairs() {
        out.push_str(&format!("{u} -> {v}\n"));
    }
    out
}

/// The directed Hasse diagram in DOT.
pub fn hasse_dot(p: &Poset) -> String {
    let cover = p.cover_relation();
    let mut out = String::from("digraph hasse {\n");
    for name in p.base().names() {
        out.push_str(&format!("  {};\n", quote(name)));
    }
    for (u, v) in cover.pairs() {
        out.push_str(&format!("  {} -> {};\n", quote(u), quote(v)));
    }
    out.push_str("}\n");
    out
}

fn induced_edges(s: &EnumSet) -> Vec<(Enumeration, Enumeration, String)> {
    let n = s.base().n();
    let mut edges = Vec::new();
    for e in s.iter() {
        for i in 1..n {
            let neighbor = e.swap_at(i);
            if *e < neighbor && s.contains(&neighbor) {
                let label = adjacency(e, &neighbor)
                    .expect("swapped enumerations are adjacent")
                    .render(s.base());
                edges.push((e.clone(), neighbor, label));
            }
        }
    }
    edges.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    edges
}

/// The induced subgraph as plain `node -- node {label}` lines, one per edge,
/// after one line per node.
pub fn induced_graph_edges(s: &EnumSet) -> String {
    let mut out = String::new();
    for e in s.iter() {
        out.push_str(&e.record());
        out.push('\n');
    }
    for (a, b, label) in induced_edges(s) {
        out.push_str(&format!("{} -- {} {}\n", a.record(), b.record(), label));
    }
    out
}

/// The induced subgraph on an enumeration set in DOT, with combinatorial
/// labels as edge attributes.
pub fn induced_graph_dot(s: &EnumSet) -> String {
    let mut out = String::from("graph permutohedral {\n");
    for e in s.iter() {
        out.push_str(&format!("  {};\n", quote(&e.record())));
    }
    for (a, b, label) in induced_edges(s) {
        out.push_str(&format!(
            "  {} -- {} [label={}];\n",
            quote(&a.record()),
            quote(&b.record()),
            quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}
