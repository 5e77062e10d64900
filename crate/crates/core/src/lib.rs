//! Finite higher-rank graphs and their ideal structure.
//!
//! A rank-`k` graph is presented here by its colored 1-skeleton together
//! with a list of commuting squares, one for each composable pair of
//! differently colored edges. [`graph::validate`] checks that such a
//! presentation satisfies the square bijection and associativity laws,
//! and everything else builds on the validated [`graph::KGraph`]:
//!
//! - [`path`]: composable words, normal forms, composition and
//!   factorization of paths.
//! - [`vertex`]: the vertex-set calculus — edge and degree preimages,
//!   receiver and tracing sets, hereditary / saturated / invariant sets.
//! - [`family`]: subset families indexed by color subsets, the t / o /
//!   invariant family kinds, and the conversions between them.
//! - [`lattice`]: exhaustive and structured enumeration of all families
//!   of a kind, with meets, joins, and covering relations.
//! - [`extend`]: the extended graph of an invariant family and the
//!   quotient presentation attached to a t family.
//! - [`format`] / [`dot`]: versioned JSON file formats and Graphviz
//!   export.
//! - [`cli`]: the `kgraph-ideals` command-line tool.
//!
//! Graphs are capped at 128 vertices and rank 16 so vertex sets and
//! color subsets fit in machine words; every operation is deterministic.

pub mod cli;
pub mod degree;
pub mod dot;
pub mod extend;
pub mod family;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod lattice;
pub mod path;
pub mod vertex;

pub use degree::{Degree, FaceSet};
pub use extend::{build_extended, quotient_graph, receiving_pattern_check, ExtendError};
pub use family::{
    cnp_family, invariant_to_t, is_invariant_family, is_o_family, is_t_family, t_to_invariant,
    FamilyError, FamilyKind, SubsetFamily,
};
pub use graph::{
    validate, EdgeId, EdgeSpec, KGraph, KGraphSpec, SquareSpec, ValidateError, VertexId, VertexSet,
};
pub use lattice::{
    brute_force_families, enumerate_families, FamilyLattice, LatticeError, SearchLimits,
};
pub use path::{Path, PathError};
