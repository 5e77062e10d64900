//! Exhaustive isomorphism testing for small graphs.
//!
//! An isomorphism is a pair of bijections (vertices, edges) that preserves
//! color, range, source, and the square list; names are ignored. Vertex
//! maps are tried exhaustively, so keep inputs to a handful of vertices.

use kgraph_ideals::{EdgeId, KGraph};
use std::collections::{BTreeMap, HashMap, HashSet};

type EdgeClasses = BTreeMap<(usize, usize, usize), Vec<EdgeId>>;

pub fn isomorphic(a: &KGraph, b: &KGraph) -> bool {
    if a.rank() != b.rank()
        || a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.square_count() != b.square_count()
    {
        return false;
    }
    let n = a.vertex_count();
    assert!(n <= 6, "exhaustive matching is for tiny graphs");

    let a_classes = edge_classes(a);
    let b_classes = edge_classes(b);
    let a_squares = square_tuples(a);
    let b_squares: HashSet<[EdgeId; 4]> = square_tuples(b).into_iter().collect();

    for p in permutations(n) {
        // Parallel edges form a class per (color, range, source); the vertex
        // map must pair classes of equal size before edges are tried.
        let mut pairs: Vec<(&[EdgeId], &[EdgeId])> = Vec::new();
        let mut ok = true;
        for (&(c, r, s), ae) in &a_classes {
            match b_classes.get(&(c, p[r], p[s])) {
                Some(be) if be.len() == ae.len() => pairs.push((ae, be)),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut phi = HashMap::new();
        if assign(&pairs, 0, &mut phi, &a_squares, &b_squares) {
            return true;
        }
    }
    false
}

/// Depth-first choice of one within-class bijection per class; a full
/// assignment is accepted when every square lands on a square.
fn assign(
    pairs: &[(&[EdgeId], &[EdgeId])],
    k: usize,
    phi: &mut HashMap<EdgeId, EdgeId>,
    a_squares: &[[EdgeId; 4]],
    b_squares: &HashSet<[EdgeId; 4]>,
) -> bool {
    if k == pairs.len() {
        return a_squares
            .iter()
            .all(|sq| b_squares.contains(&sq.map(|e| phi[&e])));
    }
    let (ae, be) = pairs[k];
    for q in permutations(ae.len()) {
        for (i, &e) in ae.iter().enumerate() {
            phi.insert(e, be[q[i]]);
        }
        if assign(pairs, k + 1, phi, a_squares, b_squares) {
            return true;
        }
    }
    false
}

fn edge_classes(g: &KGraph) -> EdgeClasses {
    let mut out: EdgeClasses = BTreeMap::new();
    for e in g.edge_ids() {
        let key = (g.color(e), g.range(e).index(), g.source(e).index());
        out.entry(key).or_default().push(e);
    }
    out
}

fn square_tuples(g: &KGraph) -> Vec<[EdgeId; 4]> {
    let spec = g.to_spec();
    spec.squares
        .iter()
        .map(|sq| {
            [&sq.lo_hi.0, &sq.lo_hi.1, &sq.hi_lo.0, &sq.hi_lo.1].map(|id| g.edge(id).unwrap())
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fill(n, &mut cur, &mut used, &mut out);
    out
}

fn fill(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            fill(n, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Like [`isomorphic`], but panics with a shape summary on mismatch.
pub fn assert_isomorphic(a: &KGraph, b: &KGraph) {
    assert!(
        isomorphic(a, b),
        "graphs are not isomorphic:\n  left:  {} vertices, {} edges, {} squares\n  right: {} vertices, {} edges, {} squares",
        a.vertex_count(),
        a.edge_count(),
        a.square_count(),
        b.vertex_count(),
        b.edge_count(),
        b.square_count()
    );
}
