//! Reference computations done the slow, literal way: bounded walks on
//! the colored skeleton, and word rewriting driven directly by the
//! square list. These deliberately avoid the engine's preimage, tracing,
//! and normalization code so they can stand as independent checks of it.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use kgraph_ideals::{Degree, EdgeId, FaceSet, KGraph, VertexId, VertexSet};

/// Vertices reachable from `v` by range→source walks whose per-color
/// step counts stay coordinatewise at most `cap`; includes `v`.
pub fn walk_targets(g: &KGraph, v: VertexId, cap: &Degree) -> VertexSet {
    let mut seen: HashSet<(VertexId, Degree)> = HashSet::new();
    let mut out = VertexSet::EMPTY;
    let mut stack = vec![(v, Degree::zero(g.rank()))];
    while let Some((u, used)) = stack.pop() {
        if !seen.insert((u, used.clone())) {
            continue;
        }
        out.insert(u);
        for c in 1..=g.rank() {
            if used.coord(c) < cap.coord(c) {
                let next = used.plus(&Degree::unit(c, g.rank()));
                for &e in g.edges_into(u, c) {
                    stack.push((g.source(e), next.clone()));
                }
            }
        }
    }
    out
}

/// Walk-quantified hereditarity: every walk of per-color length ≤ cap
/// starting in the set ends in the set.
pub fn hereditary_by_walks(g: &KGraph, set: VertexSet, cap: &Degree) -> bool {
    set.iter().all(|v| walk_targets(g, v, cap).is_subset_of(set))
}

/// Vertices all of whose walks with per-color counts exactly `m` end in
/// `set`; vacuously includes vertices with no such walk.
pub fn preimage_by_walks(g: &KGraph, set: VertexSet, m: &Degree) -> VertexSet {
    let mut memo = HashMap::new();
    let mut out = VertexSet::EMPTY;
    for v in g.full_set().iter() {
        if walks_land_in(g, set, v, m, &mut memo) {
            out.insert(v);
        }
    }
    out
}

fn walks_land_in(
    g: &KGraph,
    set: VertexSet,
    v: VertexId,
    m: &Degree,
    memo: &mut HashMap<(VertexId, Degree), bool>,
) -> bool {
    if m.is_zero() {
        return set.contains(v);
    }
    if let Some(&b) = memo.get(&(v, m.clone())) {
        return b;
    }
    let mut ok = true;
    for c in m.support().colors() {
        let rest = m
            .checked_sub(&Degree::unit(c, g.rank()))
            .expect("support colors are positive");
        for &e in g.edges_into(v, c) {
            if !walks_land_in(g, set, g.source(e), &rest, memo) {
                ok = false;
            }
        }
    }
    memo.insert((v, m.clone()), ok);
    ok
}

/// Receiver set recomputed by direct incidence scan.
pub fn w_raw(g: &KGraph, face: FaceSet) -> VertexSet {
    let mut out = VertexSet::EMPTY;
    for v in g.full_set().iter() {
        if face.colors().any(|c| !g.edges_into(v, c).is_empty()) {
            out.insert(v);
        }
    }
    out
}

/// Tracing set recomputed by walk quantification: every walk through
/// colors outside `face` must end in the receiver set. Capping each
/// color count at |Γ⁰| loses nothing — longer walks only revisit.
pub fn u_raw(g: &KGraph, face: FaceSet) -> VertexSet {
    let w = w_raw(g, face);
    let nv = g.vertex_count() as u32;
    let cap = Degree::from_coords(
        (1..=g.rank())
            .map(|c| if face.contains(c) { 0 } else { nv })
            .collect(),
    );
    g.full_set()
        .iter()
        .filter(|&v| walk_targets(g, v, &cap).is_subset_of(w))
        .collect()
}

/// Saturation recomputed from raw pieces: for every color subset, the
/// common walk-preimage of the set, cut to the raw tracing set, must
/// stay inside the set.
pub fn f_saturated_raw(g: &KGraph, set: VertexSet) -> bool {
    for face in FaceSet::all_subsets(g.rank()) {
        let mut inter = g.full_set();
        for c in face.colors() {
            inter = inter.intersection(preimage_by_walks(g, set, &Degree::unit(c, g.rank())));
        }
        if !inter.intersection(u_raw(g, face)).is_subset_of(set) {
            return false;
        }
    }
    true
}

pub fn invariant_raw(g: &KGraph, set: VertexSet, hereditary_cap: &Degree) -> bool {
    hereditary_by_walks(g, set, hereditary_cap) && f_saturated_raw(g, set)
}

/// Square table read straight off the presentation, keyed by edge ids.
pub struct SquareTable {
    /// low-high pair ↦ high-low pair
    fwd: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// high-low pair ↦ low-high pair
    bwd: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
}

pub fn square_table(g: &KGraph) -> SquareTable {
    let spec = g.to_spec();
    let mut fwd = HashMap::new();
    let mut bwd = HashMap::new();
    let id = |name: &str| g.edge(name).expect("square names resolve");
    for sq in &spec.squares {
        let lo = (id(&sq.lo_hi.0), id(&sq.lo_hi.1));
        let hi = (id(&sq.hi_lo.0), id(&sq.hi_lo.1));
        fwd.insert(lo, hi);
        bwd.insert(hi, lo);
    }
    SquareTable { fwd, bwd }
}

/// All composable words with range `v` and color counts `m`, in any
/// color order, as range-to-source edge sequences.
pub fn words_into(g: &KGraph, v: VertexId, m: &Degree) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    let mut word = Vec::new();
    words_dfs(g, v, m.clone(), &mut word, &mut out);
    out
}

fn words_dfs(
    g: &KGraph,
    at: VertexId,
    left: Degree,
    word: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    if left.is_zero() {
        out.push(word.clone());
        return;
    }
    for c in left.support().colors() {
        let rest = left
            .checked_sub(&Degree::unit(c, g.rank()))
            .expect("support colors are positive");
        for &e in g.edges_into(at, c) {
            word.push(e);
            words_dfs(g, g.source(e), rest.clone(), word, out);
            word.pop();
        }
    }
}

/// Closure of one word under adjacent square flips, in both directions.
pub fn flip_class(tbl: &SquareTable, word: &[EdgeId]) -> BTreeSet<Vec<EdgeId>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for k in 0..w.len().saturating_sub(1) {
            let pair = (w[k], w[k + 1]);
            for table in [&tbl.fwd, &tbl.bwd] {
                if let Some(&(x, y)) = table.get(&pair) {
                    let mut next = w.clone();
                    next[k] = x;
                    next[k + 1] = y;
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

pub fn is_color_sorted(g: &KGraph, word: &[EdgeId]) -> bool {
    word.windows(2).all(|p| g.color(p[0]) <= g.color(p[1]))
}

/// The word model for one (vertex, degree) cell: flip classes of the
/// composable words partition them with exactly one color-sorted word
/// per class, and the sorted words are exactly the engine's paths.
pub fn check_word_model(g: &KGraph, v: VertexId, m: &Degree) {
    let tbl = square_table(g);
    let words = words_into(g, v, m);
    let mut classified: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    let mut sorted_reps: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    for word in &words {
        if classified.contains(word) {
            continue;
        }
        let class = flip_class(&tbl, word);
        let reps: Vec<_> = class
            .iter()
            .filter(|w| is_color_sorted(g, w))
            .cloned()
            .collect();
        assert_eq!(
            reps.len(),
            1,
            "a flip class must contain exactly one sorted word"
        );
        sorted_reps.insert(reps.into_iter().next().unwrap());
        classified.extend(class);
    }
    // Every composable word got classified.
    assert_eq!(classified.len(), words.len());
    let engine: BTreeSet<Vec<EdgeId>> = g
        .paths_into(v, m)
        .iter()
        .map(|p| p.edges().to_vec())
        .collect();
    assert_eq!(engine, sorted_reps, "paths must match the word classes");
}
