//! Shared helpers for the integration suites: a deterministic corpus of
//! valid graphs, oracles recomputed from raw definitions, and an
//! exhaustive isomorphism check for small graphs.
#![allow(dead_code)]

pub mod corpus;
pub mod iso;
pub mod oracle;

use kgraph_ideals::{validate, EdgeSpec, KGraph, KGraphSpec, SquareSpec};

pub fn edge(id: &str, color: usize, range: &str, source: &str) -> EdgeSpec {
    EdgeSpec {
        id: id.into(),
        color,
        range: range.into(),
        source: source.into(),
    }
}

pub fn square(lo: (&str, &str), hi: (&str, &str)) -> SquareSpec {
    SquareSpec {
        lo_hi: (lo.0.into(), lo.1.into()),
        hi_lo: (hi.0.into(), hi.1.into()),
    }
}

/// Rank-3 graph on one vertex with five loops: `a` (color 1), `b`
/// (color 2), `z1..z3` (color 3). The color-2/3 squares twist the z
/// loops by the swap z1↔z2; the color-1/3 squares leave them alone.
/// The two permutations commute, so the presentation is associative.
pub fn twist_spec() -> KGraphSpec {
    KGraphSpec {
        rank: 3,
        vertices: vec!["x".into()],
        edges: vec![
            edge("a", 1, "x", "x"),
            edge("b", 2, "x", "x"),
            edge("z1", 3, "x", "x"),
            edge("z2", 3, "x", "x"),
            edge("z3", 3, "x", "x"),
        ],
        squares: vec![
            square(("a", "b"), ("b", "a")),
            square(("a", "z1"), ("z1", "a")),
            square(("a", "z2"), ("z2", "a")),
            square(("a", "z3"), ("z3", "a")),
            square(("b", "z1"), ("z2", "b")),
            square(("b", "z2"), ("z1", "b")),
            square(("b", "z3"), ("z3", "b")),
        ],
    }
}

pub fn twist_graph() -> KGraph {
    validate(&twist_spec()).expect("the twist fixture is a valid rank-3 graph")
}

/// `twist_spec` with the outputs of the `(a,z2)` and `(a,z3)` squares
/// swapped. Square bijectivity still holds, but the color-1/3 layer now
/// applies z2↔z3 while the color-2/3 layer applies z1↔z2; the two swaps
/// do not commute, so sorting a z·b·a word fails the diamond check.
pub fn broken_twist_spec() -> KGraphSpec {
    let mut spec = twist_spec();
    for sq in &mut spec.squares {
        if sq.lo_hi == ("a".to_string(), "z2".to_string()) {
            sq.hi_lo.0 = "z3".into();
        } else if sq.lo_hi == ("a".to_string(), "z3".to_string()) {
            sq.hi_lo.0 = "z2".into();
        }
    }
    spec
}
