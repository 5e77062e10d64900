//! Small example graphs used in the documentation and the test suite.

use crate::graph::{validate, EdgeSpec, KGraph, KGraphSpec, SquareSpec};

fn edge(id: &str, color: usize, range: &str, source: &str) -> EdgeSpec {
    EdgeSpec {
        id: id.into(),
        color,
        range: range.into(),
        source: source.into(),
    }
}

fn square(e: &str, f: &str, f2: &str, e2: &str) -> SquareSpec {
    SquareSpec {
        lo_hi: (e.into(), f.into()),
        hi_lo: (f2.into(), e2.into()),
    }
}

/// Rank 1, one vertex `v`, one loop `e`.
pub fn loop_graph() -> KGraph {
    let spec = KGraphSpec {
        rank: 1,
        vertices: vec!["v".into()],
        edges: vec![edge("e", 1, "v", "v")],
        squares: vec![],
    };
    validate(&spec).expect("fixture is valid")
}

/// Rank 1, vertices `v`, `w`, a single edge `e` pointing into `v` from `w`.
pub fn edge_graph() -> KGraph {
    let spec = KGraphSpec {
        rank: 1,
        vertices: vec!["v".into(), "w".into()],
        edges: vec![edge("e", 1, "v", "w")],
        squares: vec![],
    };
    validate(&spec).expect("fixture is valid")
}

/// Rank 2, one vertex `v`, loops `e` (color 1) and `f` (color 2) with the
/// single square `e·f = f·e`.
pub fn torus_graph() -> KGraph {
    let spec = KGraphSpec {
        rank: 2,
        vertices: vec!["v".into()],
        edges: vec![edge("e", 1, "v", "v"), edge("f", 2, "v", "v")],
        squares: vec![square("e", "f", "f", "e")],
    };
    validate(&spec).expect("fixture is valid")
}

/// Rank 2, vertices `u`, `v`; color-1 loops `a` at `v` and `c` at `u`, a
/// color-2 edge `b` from `u` into `v`, square `a·b = b·c`.
pub fn mixed_graph() -> KGraph {
    let spec = KGraphSpec {
        rank: 2,
        vertices: vec!["u".into(), "v".into()],
        edges: vec![
            edge("a", 1, "v", "v"),
            edge("b", 2, "v", "u"),
            edge("c", 1, "u", "u"),
        ],
        squares: vec![square("a", "b", "b", "c")],
    };
    validate(&spec).expect("fixture is valid")
}
