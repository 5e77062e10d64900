//! Set-level calculus on vertices: preimages under edges and paths,
//! receiver sets, tracing sets, and the two closure predicates that make a
//! vertex set invariant.

use crate::degree::{Degree, FaceSet};
use crate::graph::{KGraph, VertexSet};

impl KGraph {
    /// Vertices all of whose color-`color` in-edges come from `v_set`.
    /// A vertex with no in-edge of that color belongs vacuously.
    pub fn edge_preimage(&self, v_set: VertexSet, color: usize) -> VertexSet {
        assert!(
            color >= 1 && color <= self.rank(),
            "color out of range: {color}"
        );
        let mut out = VertexSet::EMPTY;
        for (v, _) in self.vertex_ids() {
            if self.in_source_set(v, color).is_subset_of(v_set) {
                out.insert(v);
            }
        }
        out
    }

    /// Vertices all of whose degree-`m` in-paths come from `v_set`:
    /// the unit preimages iterated `m` times. Unique factorization makes
    /// the iteration order irrelevant.
    pub fn degree_preimage(&self, v_set: VertexSet, m: &Degree) -> VertexSet {
        assert_eq!(m.rank(), self.rank(), "degree rank mismatch");
        let mut s = v_set;
        for color in 1..=self.rank() {
            for _ in 0..m.coord(color) {
                s = self.edge_preimage(s, color);
            }
        }
        s
    }

    /// Vertices receiving at least one edge of some color in `face`.
    pub fn w_set(&self, face: FaceSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for (v, _) in self.vertex_ids() {
            if face
                .colors()
                .filter(|&c| c <= self.rank())
                .any(|c| !self.in_source_set(v, c).is_empty())
            {
                out.insert(v);
            }
        }
        out
    }

    /// Vertices that keep receiving `face` colors no matter how far one
    /// walks away from them along the other colors: everything reachable
    /// from the vertex by colors outside `face` must lie in
    /// [`w_set`](Self::w_set)`(face)`.
    pub fn u_set(&self, face: FaceSet) -> VertexSet {
        let w = self.w_set(face);
        let other = face.complement(self.rank());
        let mut out = VertexSet::EMPTY;
        for (v, _) in self.vertex_ids() {
            if self.reachable(v, other).is_subset_of(w) {
                out.insert(v);
            }
        }
        out
    }

    /// Every edge pointing into `v_set` starts in `v_set`.
    pub fn is_hereditary(&self, v_set: VertexSet) -> bool {
        v_set.iter().all(|v| {
            (1..=self.rank()).all(|c| self.in_source_set(v, c).is_subset_of(v_set))
        })
    }

    /// For every color set `F`: a vertex whose `F`-colored in-edges all
    /// start in `v_set`, and which lies in the `F`-tracing set, must itself
    /// lie in `v_set`. The empty intersection over `F = {}` is the whole
    /// vertex set, so that case imposes nothing (its tracing set is empty).
    pub fn is_f_saturated(&self, v_set: VertexSet) -> bool {
        for face in FaceSet::all_subsets(self.rank()) {
            let mut s = self.full_set();
            for color in face.colors() {
                s = s.intersection(self.edge_preimage(v_set, color));
            }
            s = s.intersection(self.u_set(face));
            if !s.is_subset_of(v_set) {
                return false;
            }
        }
        true
    }

    /// Hereditary and saturated.
    pub fn is_invariant_set(&self, v_set: VertexSet) -> bool {
        self.is_hereditary(v_set) && self.is_f_saturated(v_set)
    }

    /// Convenience: the set of the given vertex names. `None` if any name
    /// is unknown.
    pub fn set_of_names<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Option<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for name in names {
            s.insert(self.vertex(name)?);
        }
        Some(s)
    }
}

/// All `2^|vertices|` subsets; only usable at desk scale.
pub fn all_subsets(g: &KGraph) -> impl Iterator<Item = VertexSet> {
    let full = g.full_set();
    VertexSet::interval(VertexSet::EMPTY, full)
}
