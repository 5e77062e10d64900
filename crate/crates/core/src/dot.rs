//! DOT (Graphviz) export for graphs and family lattices.

use std::fmt::Write;

use crate::graph::KGraph;
use crate::lattice::{hasse, FamilyLattice};

/// Edge colors indexed by color; wraps for ranks beyond the palette.
const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#666666",
];

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// DOT text for the colored 1-skeleton. Edges point source to range and
/// are labeled by color.
pub fn graph_to_dot(g: &KGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph skeleton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (_, name) in g.vertex_ids() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for e in g.edge_ids() {
        let color = g.color(e);
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\", color=\"{}\"];",
            quote(g.vertex_name(g.source(e))),
            quote(g.vertex_name(g.range(e))),
            color,
            PALETTE[(color - 1) % PALETTE.len()],
        );
    }
    out.push_str("}\n");
    out
}

/// DOT text for the order diagram of a lattice: one node per family,
/// one edge per covering pair, drawn bottom to top.
pub fn lattice_to_dot(g: &KGraph, lattice: &FamilyLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph {}_lattice {{\n  rankdir=BT;\n  node [shape=box];",
        lattice.kind()
    );
    for (i, fam) in lattice.elements().iter().enumerate() {
        let _ = writeln!(out, "  n{} [label={}];", i, quote(&fam.render(g)));
    }
    for (lo, hi) in hasse(lattice) {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}
