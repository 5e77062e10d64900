//! Families of vertex sets indexed by subsets of the color set.
//!
//! A [`SubsetFamily`] assigns one vertex set to every subset `F` of the
//! colors. Three nested conditions matter here:
//!
//! * a relative family ties each component to its one-color extensions
//!   through edge preimages ([`is_t_family`]);
//! * an absolute family is a relative family whose components also contain
//!   the tracing sets ([`is_o_family`]);
//! * an invariant family states the preimage equations in a complementary
//!   indexing ([`is_invariant_family`]).
//!
//! [`t_to_invariant`] and [`invariant_to_t`] translate between the first
//! and third forms; they are inverse to each other and preserve
//! componentwise inclusion in both directions.

use std::fmt;

use thiserror::Error;

use crate::degree::{Degree, FaceSet};
use crate::graph::{KGraph, VertexSet};

/// Which family predicate a lattice or file claims.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FamilyKind {
    /// Relative families (tied components, nothing absolute).
    T,
    /// Absolute families (tied components containing the tracing sets).
    O,
    /// Invariant families (complementary indexing).
    Invariant,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::T => "t",
            FamilyKind::O => "o",
            FamilyKind::Invariant => "invariant",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum FamilyError {
    #[error("family has {got} entries, expected {want} (one per color subset)")]
    WrongComponentCount { got: usize, want: usize },
    #[error("family component {face} mentions vertices outside the graph")]
    NotAVertexSet { face: String },
    #[error("family belongs to a different graph")]
    GraphMismatch,
    #[error("family is not a relative (t) family")]
    NotATFamily,
    #[error("family is not an invariant family")]
    NotAnInvariantFamily,
}

/// A total assignment of a vertex set to every subset of the colors.
///
/// Components are stored in mask order of the color subsets. The derived
/// `Ord` (fingerprint, then componentwise numeric mask order) is a linear
/// extension of componentwise inclusion, so sorted element lists are
/// canonical; inclusion itself is [`SubsetFamily::le`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubsetFamily {
    graph_fp: u64,
    rank: usize,
    entries: Vec<VertexSet>,
}

impl SubsetFamily {
    /// Wraps explicit components, one per color subset in mask order.
    pub fn new(g: &KGraph, entries: Vec<VertexSet>) -> Result<SubsetFamily, FamilyError> {
        let want = 1usize << g.rank();
        if entries.len() != want {
            return Err(FamilyError::WrongComponentCount {
                got: entries.len(),
                want,
            });
        }
        let full = g.full_set();
        for (i, s) in entries.iter().enumerate() {
            if !s.is_subset_of(full) {
                return Err(FamilyError::NotAVertexSet {
                    face: FaceSet::from_mask(i as u16).to_string(),
                });
            }
        }
        Ok(SubsetFamily {
            graph_fp: g.fingerprint(),
            rank: g.rank(),
            entries,
        })
    }

    /// The family with every component equal to `s`.
    pub fn constant(g: &KGraph, s: VertexSet) -> SubsetFamily {
        SubsetFamily::new(g, vec![s; 1 << g.rank()]).expect("constant components are sets")
    }

    /// Builds componentwise from a function on color subsets.
    pub fn from_fn(g: &KGraph, mut f: impl FnMut(FaceSet) -> VertexSet) -> SubsetFamily {
        let entries = FaceSet::all_subsets(g.rank()).map(|face| f(face)).collect();
        SubsetFamily::new(g, entries).expect("function components are sets")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn graph_fingerprint(&self) -> u64 {
        self.graph_fp
    }

    /// True when this family was built against `g` (same fingerprint).
    pub fn belongs_to(&self, g: &KGraph) -> bool {
        self.graph_fp == g.fingerprint() && self.rank == g.rank()
    }

    pub fn get(&self, face: FaceSet) -> VertexSet {
        self.entries[face.index()]
    }

    pub fn components(&self) -> impl Iterator<Item = (FaceSet, VertexSet)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &s)| (FaceSet::from_mask(i as u16), s))
    }

    /// Componentwise inclusion (the lattice order on families).
    pub fn le(&self, other: &SubsetFamily) -> bool {
        debug_assert_eq!(self.rank, other.rank);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.is_subset_of(*b))
    }

    /// Componentwise intersection. Fails on families of different graphs.
    pub fn intersect(&self, other: &SubsetFamily) -> Result<SubsetFamily, FamilyError> {
        if self.graph_fp != other.graph_fp || self.rank != other.rank {
            return Err(FamilyError::GraphMismatch);
        }
        Ok(SubsetFamily {
            graph_fp: self.graph_fp,
            rank: self.rank,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.intersection(*b))
                .collect(),
        })
    }

    /// Compact rendering like `{}:∅ {1}:{v}`, used in lattice output.
    pub fn render(&self, g: &KGraph) -> String {
        self.components()
            .map(|(face, s)| format!("{}:{}", face, g.render_set(s)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_graph(g: &KGraph, fam: &SubsetFamily) {
    assert!(
        fam.belongs_to(g),
        "family does not belong to this graph (fingerprint mismatch)"
    );
}

/// Relative family check: for every color subset `F` and color `i` outside
/// `F`, the color-`i` preimage of the `F` component, cut down to the
/// `F ∪ {i}` component, is exactly the `F` component. In particular each
/// component sits inside its one-color extensions.
pub fn is_t_family(g: &KGraph, fam: &SubsetFamily) -> bool {
    check_graph(g, fam);
    for face in FaceSet::all_subsets(g.rank()) {
        let v_f = fam.get(face);
        for color in 1..=g.rank() {
            if face.contains(color) {
                continue;
            }
            let bigger = fam.get(face.with(color));
            if g.edge_preimage(v_f, color).intersection(bigger) != v_f {
                return false;
            }
        }
    }
    true
}

/// Absolute family check: a relative family each of whose components
/// contains the tracing set of its index.
pub fn is_o_family(g: &KGraph, fam: &SubsetFamily) -> bool {
    check_graph(g, fam);
    if !is_t_family(g, fam) {
        return false;
    }
    FaceSet::all_subsets(g.rank()).all(|face| g.u_set(face).is_subset_of(fam.get(face)))
}

/// Invariant family check: for every color subset `G` and color `i`
/// outside `G`, the `G` component is the color-`i` preimage of the
/// intersection of the `G` and `G ∪ {i}` components.
pub fn is_invariant_family(g: &KGraph, fam: &SubsetFamily) -> bool {
    check_graph(g, fam);
    for face in FaceSet::all_subsets(g.rank()) {
        let w_g = fam.get(face);
        for color in 1..=g.rank() {
            if face.contains(color) {
                continue;
            }
            let cut = w_g.intersection(fam.get(face.with(color)));
            if g.edge_preimage(cut, color) != w_g {
                return false;
            }
        }
    }
    true
}

/// Re-indexes a relative family into its invariant form: the `F` component
/// becomes the preimage of the old component under the characteristic
/// degree of the complement of `F`.
pub fn t_to_invariant(g: &KGraph, fam: &SubsetFamily) -> Result<SubsetFamily, FamilyError> {
    check_graph(g, fam);
    if !is_t_family(g, fam) {
        return Err(FamilyError::NotATFamily);
    }
    let out = SubsetFamily::from_fn(g, |face| {
        let m = Degree::of_face(face.complement(g.rank()), g.rank());
        g.degree_preimage(fam.get(face), &m)
    });
    debug_assert!(is_invariant_family(g, &out));
    Ok(out)
}

/// Inverse re-indexing: the `F` component of the relative form is the
/// intersection of the invariant components over all supersets of `F`
/// (including `F` itself).
pub fn invariant_to_t(g: &KGraph, fam: &SubsetFamily) -> Result<SubsetFamily, FamilyError> {
    check_graph(g, fam);
    if !is_invariant_family(g, fam) {
        return Err(FamilyError::NotAnInvariantFamily);
    }
    let out = SubsetFamily::from_fn(g, |face| {
        face.supersets(g.rank())
            .map(|sup| fam.get(sup))
            .fold(g.full_set(), VertexSet::intersection)
    });
    debug_assert!(is_t_family(g, &out));
    Ok(out)
}

/// The family of tracing sets. It is a relative family, and it is the
/// componentwise-least absolute family.
pub fn cnp_family(g: &KGraph) -> SubsetFamily {
    SubsetFamily::from_fn(g, |face| g.u_set(face))
}
