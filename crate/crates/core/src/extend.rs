//! Extended graphs: one labeled component per color subset.
//!
//! Given an invariant family `W`, the extended graph has vertex copies
//! `v@F` for every `F` with `v` outside the `F` component, and a color-`i`
//! edge copy `γ@F` for every `F` with `s(γ)` outside the `F` component.
//! The copy points from `s(γ)@F` into `r(γ)@(F minus i)`, so walking an
//! edge toward its source moves one component up. Squares are inherited
//! with the forced relabeling, and the result of [`build_extended`] passes
//! validation again.
//!
//! The point of the construction: a vertex copy `v@G` receives a color
//! exactly when the color is outside `G` ([`receiving_pattern_check`]),
//! which is how the family data is read back off the extended graph.

use thiserror::Error;

use crate::degree::{parse_face_set, FaceSet};
use crate::family::{is_invariant_family, is_t_family, t_to_invariant, SubsetFamily};
use crate::graph::{validate, EdgeSpec, KGraph, KGraphSpec, SquareSpec, ValidateError};

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ExtendError {
    #[error("family is not a relative (t) family")]
    NotATFamily,
    #[error("family is not an invariant family")]
    NotAnInvariantFamily,
    #[error("extended graph failed internal validation: {0}")]
    Internal(ValidateError),
}

/// Name of the copy of `base` in component `face`: `v@{1,3}`.
pub fn extended_id(base: &str, face: FaceSet) -> String {
    format!("{base}@{face}")
}

/// Splits `v@{1,3}` back into the base id and its component.
pub fn parse_extended_id(id: &str) -> Option<(&str, FaceSet)> {
    let (base, face_text) = id.rsplit_once('@')?;
    Some((base, parse_face_set(face_text)?))
}

/// Builds the extended graph of an invariant family.
pub fn build_extended(g: &KGraph, w: &SubsetFamily) -> Result<KGraph, ExtendError> {
    if !is_invariant_family(g, w) {
        return Err(ExtendError::NotAnInvariantFamily);
    }
    let rank = g.rank();
    let mut spec = KGraphSpec {
        rank,
        vertices: Vec::new(),
        edges: Vec::new(),
        squares: Vec::new(),
    };
    for face in FaceSet::all_subsets(rank) {
        let excluded = w.get(face);
        for (v, name) in g.vertex_ids() {
            if !excluded.contains(v) {
                spec.vertices.push(extended_id(name, face));
            }
        }
    }
    for face in FaceSet::all_subsets(rank) {
        let excluded = w.get(face);
        for e in g.edge_ids() {
            if excluded.contains(g.source(e)) {
                continue;
            }
            let color = g.color(e);
            spec.edges.push(EdgeSpec {
                id: extended_id(g.edge_name(e), face),
                color,
                range: extended_id(g.vertex_name(g.range(e)), face.without(color)),
                source: extended_id(g.vertex_name(g.source(e)), face),
            });
        }
    }
    // A base square e·f = f2·e2 with colors i < j lifts at component F to
    // e@(F−j) · f@F = f2@(F−i) · e2@F, whenever all four copies exist.
    let exists = |edge_name: &str, face: FaceSet| {
        let e = g.edge(edge_name).expect("square edges exist in the base");
        !w.get(face).contains(g.source(e))
    };
    let base_squares = g.to_spec().squares;
    for face in FaceSet::all_subsets(rank) {
        for sq in &base_squares {
            let (e, f) = (&sq.lo_hi.0, &sq.lo_hi.1);
            let (f2, e2) = (&sq.hi_lo.0, &sq.hi_lo.1);
            let i = g.color(g.edge(e).unwrap());
            let j = g.color(g.edge(f).unwrap());
            let fe = face.without(j);
            let ff2 = face.without(i);
            if exists(e, fe) && exists(f, face) && exists(f2, ff2) && exists(e2, face) {
                spec.squares.push(SquareSpec {
                    lo_hi: (extended_id(e, fe), extended_id(f, face)),
                    hi_lo: (extended_id(f2, ff2), extended_id(e2, face)),
                });
            }
        }
    }
    validate(&spec).map_err(ExtendError::Internal)
}

/// Checks the component law on an extended graph: the copy `v@G` must
/// receive at least one edge of every color outside `G` and none of any
/// color inside `G`. Also verifies that every vertex is a labeled copy of
/// a base vertex outside its component of `w`.
pub fn receiving_pattern_check(g: &KGraph, w: &SubsetFamily, extended: &KGraph) -> bool {
    if extended.rank() != g.rank() {
        return false;
    }
    for (v, name) in extended.vertex_ids() {
        let Some((base, face)) = parse_extended_id(name) else {
            return false;
        };
        let Some(base_v) = g.vertex(base) else {
            return false;
        };
        if w.get(face).contains(base_v) {
            return false;
        }
        for color in 1..=extended.rank() {
            let receives = !extended.edges_into(v, color).is_empty();
            if face.contains(color) == receives {
                return false;
            }
        }
    }
    true
}

/// Extended graph of the invariant form of a relative family.
pub fn quotient_graph(g: &KGraph, v: &SubsetFamily) -> Result<KGraph, ExtendError> {
    if !is_t_family(g, v) {
        return Err(ExtendError::NotATFamily);
    }
    let w = t_to_invariant(g, v).expect("checked relative");
    build_extended(g, &w)
}
