//! Finite higher-rank graphs presented by a colored 1-skeleton plus
//! commuting squares.
//!
//! A rank-`n` graph is stored as its skeleton: vertices, colored edges, and
//! one square per composable bicolored pair. [`validate`] checks that the
//! square list really presents a rank-`n` graph (every bicolored pair is
//! matched exactly once in each color order, and for rank three and up the
//! two ways of color-sorting a tricolored word agree). Only a validated
//! [`KGraph`] can be consumed by the rest of the crate; it is immutable and
//! safe to share across threads.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::degree::MAX_RANK;

/// Hard cap on vertex count, so vertex sets fit one `u128` bitmask.
pub const MAX_VERTICES: usize = 128;

/// Dense index of a vertex in a validated graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of an edge in a validated graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub(crate) u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of vertices of one graph, as a bitmask over dense indices.
///
/// The derived `Ord` is the numeric order on masks. It is a linear
/// extension of inclusion (a proper subset always compares smaller), which
/// makes sorted lists of sets canonical; inclusion itself is
/// [`VertexSet::is_subset_of`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(count: usize) -> VertexSet {
        debug_assert!(count <= MAX_VERTICES);
        if count == MAX_VERTICES {
            VertexSet(!0)
        } else {
            VertexSet((1u128 << count) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> VertexSet {
        VertexSet(1u128 << v.index())
    }

    pub fn from_bits(bits: u128) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 >> v.index() & 1 != 0
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u128 << v.index();
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u128 << v.index());
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(VertexId(i))
            }
        })
    }

    /// All sets `s` with `lo ⊆ s ⊆ hi`, in ascending mask order.
    /// Empty when `lo` is not contained in `hi`.
    pub fn interval(lo: VertexSet, hi: VertexSet) -> impl Iterator<Item = VertexSet> {
        let free = hi.0 & !lo.0;
        let valid = lo.is_subset_of(hi);
        let mut next: Option<u128> = if valid { Some(0) } else { None };
        std::iter::from_fn(move || {
            let cur = next?;
            // Steps through submasks of `free` in increasing order.
            next = if cur == free {
                None
            } else {
                Some(cur.wrapping_sub(free) & free)
            };
            Some(VertexSet(lo.0 | cur))
        })
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.index())?;
        }
        write!(f, "}}")
    }
}

/// One edge of the skeleton, by ids. `range` is the vertex the edge points
/// into; paths compose range-to-source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeSpec {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

/// One commuting square `e·f = f2·e2`, with `color(e) = color(e2) <
/// color(f) = color(f2)`. The first pair lists the lower color first, the
/// second pair the higher color first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareSpec {
    pub lo_hi: (String, String),
    pub hi_lo: (String, String),
}

/// Raw presentation of a graph, as read from a file or built in code.
/// Order of the lists is preserved; [`validate`] turns it into a [`KGraph`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KGraphSpec {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub squares: Vec<SquareSpec>,
}

impl KGraphSpec {
    /// Canonically ordered copy: vertices and edges sorted by id, squares
    /// sorted by their lower-color pair.
    pub fn canonicalize(&self) -> KGraphSpec {
        let mut out = self.clone();
        out.vertices.sort();
        out.edges.sort_by(|a, b| a.id.cmp(&b.id));
        out.squares.sort_by(|a, b| a.lo_hi.cmp(&b.lo_hi));
        out
    }
}

/// Why a [`KGraphSpec`] failed validation.
#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum ValidateError {
    #[error("rank {0} out of range (must be 1..={MAX_RANK})")]
    InvalidRank(usize),
    #[error("too many vertices: {0} (limit {MAX_VERTICES})")]
    TooManyVertices(usize),
    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("{place} references unknown {kind} {id:?}")]
    DanglingEndpoint {
        place: String,
        kind: &'static str,
        id: String,
    },
    #[error("edge {id:?} has color {color} outside 1..={rank}")]
    InvalidColor { id: String, color: usize, rank: usize },
    #[error("square [{e:?},{f:?}] = [{f2:?},{e2:?}] violates the color pattern (need color(e)=color(e2) < color(f)=color(f2))")]
    SquareColorMismatch {
        e: String,
        f: String,
        f2: String,
        e2: String,
    },
    #[error("square [{e:?},{f:?}] = [{f2:?},{e2:?}] has inconsistent endpoints")]
    SquareEndpointMismatch {
        e: String,
        f: String,
        f2: String,
        e2: String,
    },
    #[error("squares do not match bicolored pairs bijectively: pair ({a:?},{b:?}) appears in {count} square(s)")]
    SquareNotBijective { a: String, b: String, count: usize },
    #[error("color-sorting the word {w1:?}·{w2:?}·{w3:?} gives different results depending on flip order")]
    AssociativityViolation { w1: String, w2: String, w3: String },
}

#[derive(Clone, Debug)]
pub(crate) struct EdgeData {
    pub(crate) id: String,
    pub(crate) color: usize,
    pub(crate) range: VertexId,
    pub(crate) source: VertexId,
}

/// A validated rank-`n` graph with dense indices and incidence tables.
#[derive(Clone, Debug)]
pub struct KGraph {
    rank: usize,
    vertices: Vec<String>,
    vertex_lookup: HashMap<String, VertexId>,
    edges: Vec<EdgeData>,
    edge_lookup: HashMap<String, EdgeId>,
    /// `in_edges[color-1][v]`: edges with range `v` of that color.
    in_edges: Vec<Vec<Vec<EdgeId>>>,
    /// `out_edges[color-1][v]`: edges with source `v` of that color.
    out_edges: Vec<Vec<Vec<EdgeId>>>,
    /// `in_sources[color-1][v]`: set of sources of edges into `v`.
    in_sources: Vec<Vec<VertexSet>>,
    /// Maps a composable higher-then-lower color pair to its flip.
    sort_flip: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// Inverse of `sort_flip`.
    unsort_flip: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    squares: Vec<SquareSpec>,
    fingerprint: u64,
}

impl KGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = (VertexId, &str)> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, id)| (VertexId(i as u32), id.as_str()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex(&self, id: &str) -> Option<VertexId> {
        self.vertex_lookup.get(id).copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(|i| EdgeId(i as u32))
    }

    pub fn edge(&self, id: &str) -> Option<EdgeId> {
        self.edge_lookup.get(id).copied()
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].id
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.edges[e.index()].color
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    /// Edges of one color whose range is `v`.
    pub fn edges_into(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.in_edges[color - 1][v.index()]
    }

    /// Edges of one color whose source is `v`.
    pub fn edges_from(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.out_edges[color - 1][v.index()]
    }

    /// Sources of the color-`color` edges into `v`, as a set.
    pub(crate) fn in_source_set(&self, v: VertexId, color: usize) -> VertexSet {
        self.in_sources[color - 1][v.index()]
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Flips a composable pair written higher color first into the
    /// equal pair written lower color first.
    pub(crate) fn flip_sorted(&self, hi: EdgeId, lo: EdgeId) -> (EdgeId, EdgeId) {
        self.sort_flip[&(hi, lo)]
    }

    /// Flips a composable pair written lower color first into the
    /// equal pair written higher color first.
    pub(crate) fn flip_unsorted(&self, lo: EdgeId, hi: EdgeId) -> (EdgeId, EdgeId) {
        self.unsort_flip[&(lo, hi)]
    }

    /// First eight bytes of a SHA-256 over the canonicalized presentation.
    /// Stable across reorderings of the same graph and across runs.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// The presentation back, in current index order.
    pub fn to_spec(&self) -> KGraphSpec {
        KGraphSpec {
            rank: self.rank,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    color: e.color,
                    range: self.vertices[e.range.index()].clone(),
                    source: self.vertices[e.source.index()].clone(),
                })
                .collect(),
            squares: self.squares.clone(),
        }
    }

    /// Renders a vertex set with vertex names, in index order.
    pub fn render_set(&self, s: VertexSet) -> String {
        let mut out = String::from("{");
        for (k, v) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.vertex_name(v));
        }
        out.push('}');
        out
    }
}

fn fingerprint_of(spec: &KGraphSpec) -> u64 {
    // Hashes a length-prefixed flat encoding of the canonical presentation,
    // so equal graphs under reordering hash equal.
    let canon = spec.canonicalize();
    let mut h = Sha256::new();
    let mut put = |s: &str| {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s.as_bytes());
    };
    put(&format!("rank:{}", canon.rank));
    for v in &canon.vertices {
        put(v);
    }
    for e in &canon.edges {
        put(&format!("{}|{}|{}|{}", e.id, e.color, e.range, e.source));
    }
    for s in &canon.squares {
        put(&format!(
            "{}|{}|{}|{}",
            s.lo_hi.0, s.lo_hi.1, s.hi_lo.0, s.hi_lo.1
        ));
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Checks a presentation and builds the indexed graph.
///
/// Beyond well-formedness (unique ids, endpoints and colors in range,
/// square endpoints consistent) this checks the two structural laws that
/// make the squares present a rank-`n` graph: every composable bicolored
/// pair appears in exactly one square on its side of the equation, and for
/// rank at least three, color-sorting a word of three distinct colors gives
/// the same answer along both flip orders.
pub fn validate(spec: &KGraphSpec) -> Result<KGraph, ValidateError> {
    if spec.rank < 1 || spec.rank > MAX_RANK {
        return Err(ValidateError::InvalidRank(spec.rank));
    }
    if spec.vertices.len() > MAX_VERTICES {
        return Err(ValidateError::TooManyVertices(spec.vertices.len()));
    }

    let mut vertex_lookup = HashMap::new();
    for (i, id) in spec.vertices.iter().enumerate() {
        if vertex_lookup.insert(id.clone(), VertexId(i as u32)).is_some() {
            return Err(ValidateError::DuplicateId {
                kind: "vertex",
                id: id.clone(),
            });
        }
    }

    let mut edges = Vec::with_capacity(spec.edges.len());
    let mut edge_lookup = HashMap::new();
    for (i, e) in spec.edges.iter().enumerate() {
        if e.color < 1 || e.color > spec.rank {
            return Err(ValidateError::InvalidColor {
                id: e.id.clone(),
                color: e.color,
                rank: spec.rank,
            });
        }
        let endpoint = |vid: &String| {
            vertex_lookup
                .get(vid)
                .copied()
                .ok_or_else(|| ValidateError::DanglingEndpoint {
                    place: format!("edge {:?}", e.id),
                    kind: "vertex",
                    id: vid.clone(),
                })
        };
        let data = EdgeData {
            id: e.id.clone(),
            color: e.color,
            range: endpoint(&e.range)?,
            source: endpoint(&e.source)?,
        };
        if edge_lookup.insert(e.id.clone(), EdgeId(i as u32)).is_some() {
            return Err(ValidateError::DuplicateId {
                kind: "edge",
                id: e.id.clone(),
            });
        }
        edges.push(data);
    }

    let nv = spec.vertices.len();
    let mut in_edges = vec![vec![Vec::new(); nv]; spec.rank];
    let mut out_edges = vec![vec![Vec::new(); nv]; spec.rank];
    let mut in_sources = vec![vec![VertexSet::EMPTY; nv]; spec.rank];
    for (i, e) in edges.iter().enumerate() {
        in_edges[e.color - 1][e.range.index()].push(EdgeId(i as u32));
        out_edges[e.color - 1][e.source.index()].push(EdgeId(i as u32));
        in_sources[e.color - 1][e.range.index()].insert(e.source);
    }

    // Square well-formedness, then the pairing tables.
    let mut sort_flip = HashMap::new();
    let mut unsort_flip = HashMap::new();
    for sq in &spec.squares {
        let look = |id: &String| {
            edge_lookup
                .get(id)
                .copied()
                .ok_or_else(|| ValidateError::DanglingEndpoint {
                    place: format!(
                        "square [{:?},{:?}] = [{:?},{:?}]",
                        sq.lo_hi.0, sq.lo_hi.1, sq.hi_lo.0, sq.hi_lo.1
                    ),
                    kind: "edge",
                    id: id.clone(),
                })
        };
        let e = look(&sq.lo_hi.0)?;
        let f = look(&sq.lo_hi.1)?;
        let f2 = look(&sq.hi_lo.0)?;
        let e2 = look(&sq.hi_lo.1)?;
        let (de, df, df2, de2) = (
            &edges[e.index()],
            &edges[f.index()],
            &edges[f2.index()],
            &edges[e2.index()],
        );
        let color_ok =
            de.color == de2.color && df.color == df2.color && de.color < df.color;
        if !color_ok {
            return Err(ValidateError::SquareColorMismatch {
                e: sq.lo_hi.0.clone(),
                f: sq.lo_hi.1.clone(),
                f2: sq.hi_lo.0.clone(),
                e2: sq.hi_lo.1.clone(),
            });
        }
        // Both sides must compose and bound the same rectangle of vertices.
        let endpoints_ok = de.source == df.range
            && df2.source == de2.range
            && de.range == df2.range
            && df.source == de2.source;
        if !endpoints_ok {
            return Err(ValidateError::SquareEndpointMismatch {
                e: sq.lo_hi.0.clone(),
                f: sq.lo_hi.1.clone(),
                f2: sq.hi_lo.0.clone(),
                e2: sq.hi_lo.1.clone(),
            });
        }
        unsort_flip.insert((e, f), (f2, e2));
        sort_flip.insert((f2, e2), (e, f));
    }

    // Bijectivity: count how often each composable bicolored pair is
    // covered by a square, in both color orders.
    let pair_error = |a: EdgeId, b: EdgeId, count: usize| ValidateError::SquareNotBijective {
        a: edges[a.index()].id.clone(),
        b: edges[b.index()].id.clone(),
        count,
    };
    let mut lo_hi_seen: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    let mut hi_lo_seen: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
    for sq in &spec.squares {
        let e = edge_lookup[&sq.lo_hi.0];
        let f = edge_lookup[&sq.lo_hi.1];
        let f2 = edge_lookup[&sq.hi_lo.0];
        let e2 = edge_lookup[&sq.hi_lo.1];
        *lo_hi_seen.entry((e, f)).or_insert(0) += 1;
        *hi_lo_seen.entry((f2, e2)).or_insert(0) += 1;
    }
    // For every composable pair (a, b) of distinct colors (the path a·b,
    // with s(a) = r(b)), exactly one square must cover it on the side
    // matching its color order.
    for i in 0..edges.len() {
        let a = EdgeId(i as u32);
        let da = &edges[i];
        for color in 1..=spec.rank {
            if color == da.color {
                continue;
            }
            for &b in &in_edges[color - 1][da.source.index()] {
                let count = if da.color < color {
                    lo_hi_seen.get(&(a, b)).copied().unwrap_or(0)
                } else {
                    hi_lo_seen.get(&(a, b)).copied().unwrap_or(0)
                };
                if count != 1 {
                    return Err(pair_error(a, b, count));
                }
            }
        }
    }

    let graph = KGraph {
        rank: spec.rank,
        vertices: spec.vertices.clone(),
        vertex_lookup,
        edges,
        edge_lookup,
        in_edges,
        out_edges,
        in_sources,
        sort_flip,
        unsort_flip,
        squares: spec.squares.clone(),
        fingerprint: fingerprint_of(spec),
    };

    if spec.rank >= 3 {
        check_associativity(&graph)?;
    }

    Ok(graph)
}

/// Confluence on tricolored words. Every composable word `w1·w2·w3` with
/// strictly decreasing colors can be color-sorted starting from either
/// adjacent flip; both orders must produce the same sorted word. Together
/// with termination (each flip removes one color inversion) this pins a
/// unique normal form for paths of any length.
fn check_associativity(g: &KGraph) -> Result<(), ValidateError> {
    for w1 in g.edge_ids() {
        let c1 = g.color(w1);
        for c2 in 1..c1 {
            for &w2 in g.edges_into(g.source(w1), c2) {
                for c3 in 1..c2 {
                    for &w3 in g.edges_into(g.source(w2), c3) {
                        let front = sort_three(g, [w1, w2, w3], true);
                        let back = sort_three(g, [w1, w2, w3], false);
                        if front != back {
                            return Err(ValidateError::AssociativityViolation {
                                w1: g.edge_name(w1).to_string(),
                                w2: g.edge_name(w2).to_string(),
                                w3: g.edge_name(w3).to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Sorts a strictly color-decreasing composable word of length three,
/// starting with the front flip or the back flip. After the first flip the
/// continuation is forced.
fn sort_three(g: &KGraph, w: [EdgeId; 3], front_first: bool) -> [EdgeId; 3] {
    let [a, b, c] = w;
    if front_first {
        let (b1, a1) = g.flip_sorted(a, b);
        let (c1, a2) = g.flip_sorted(a1, c);
        let (c2, b2) = g.flip_sorted(b1, c1);
        [c2, b2, a2]
    } else {
        let (c1, b1) = g.flip_sorted(b, c);
        let (c2, a1) = g.flip_sorted(a, c1);
        let (b2, a2) = g.flip_sorted(a1, b1);
        [c2, b2, a2]
    }
}
