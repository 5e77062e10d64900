//! Paths and their color-sorted normal form.
//!
//! A path is a composable word of edges read range-to-source. Two words
//! related by square flips name the same path; the stored representative is
//! the unique word whose colors are non-decreasing from the range end.
//! Each flip of an adjacent out-of-order pair removes exactly one color
//! inversion, so sorting terminates, and validation has already checked
//! that the result does not depend on flip order.

use thiserror::Error;

use crate::degree::{Degree, FaceSet};
use crate::graph::{EdgeId, KGraph, VertexId, VertexSet};

/// A path of a validated graph, in color-sorted normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    edges: Vec<EdgeId>,
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum PathError {
    #[error("paths do not compose: left source differs from right range")]
    NotComposable,
    #[error("word is empty; a degree-zero path needs an explicit vertex")]
    EmptyWord,
    #[error("edges {at} and {after} of the word do not compose")]
    BrokenWord { at: usize, after: usize },
    #[error("degree {wanted} does not sit below the path degree {have}")]
    DegreeOutOfRange { wanted: String, have: String },
}

impl Path {
    /// The degree-zero path at a vertex.
    pub fn vertex(g: &KGraph, v: VertexId) -> Path {
        Path {
            range: v,
            source: v,
            degree: Degree::zero(g.rank()),
            edges: Vec::new(),
        }
    }

    /// The length-one path of a single edge.
    pub fn edge(g: &KGraph, e: EdgeId) -> Path {
        Path {
            range: g.range(e),
            source: g.source(e),
            degree: Degree::unit(g.color(e), g.rank()),
            edges: vec![e],
        }
    }

    /// Builds a path from a composable word in any color order and
    /// normalizes it.
    pub fn from_word(g: &KGraph, word: &[EdgeId]) -> Result<Path, PathError> {
        let first = *word.first().ok_or(PathError::EmptyWord)?;
        let mut degree = Degree::zero(g.rank());
        for (i, pair) in word.windows(2).enumerate() {
            if g.source(pair[0]) != g.range(pair[1]) {
                return Err(PathError::BrokenWord { at: i, after: i + 1 });
            }
        }
        for &e in word {
            degree = degree.plus(&Degree::unit(g.color(e), g.rank()));
        }
        let mut edges = word.to_vec();
        normalize(g, &mut edges);
        Ok(Path {
            range: g.range(first),
            source: g.source(*word.last().unwrap()),
            degree,
            edges,
        })
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    /// The normal-form word.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// Renders as `v` for a vertex path or `e·f` otherwise.
    pub fn render(&self, g: &KGraph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.range).to_string()
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join("·")
        }
    }
}

/// Sorts a composable word by color with square flips (insertion sort;
/// each inner step flips one adjacent inversion).
fn normalize(g: &KGraph, word: &mut [EdgeId]) {
    for k in 1..word.len() {
        let mut j = k;
        while j > 0 && g.color(word[j - 1]) > g.color(word[j]) {
            let (lo, hi) = g.flip_sorted(word[j - 1], word[j]);
            word[j - 1] = lo;
            word[j] = hi;
            j -= 1;
        }
    }
}

impl KGraph {
    /// The composite `p·q`; requires `s(p) = r(q)`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, PathError> {
        if p.source != q.range {
            return Err(PathError::NotComposable);
        }
        let mut edges = Vec::with_capacity(p.edges.len() + q.edges.len());
        edges.extend_from_slice(&p.edges);
        edges.extend_from_slice(&q.edges);
        normalize(self, &mut edges);
        Ok(Path {
            range: p.range,
            source: q.source,
            degree: p.degree.plus(&q.degree),
            edges,
        })
    }

    /// Splits `p` as `head·tail` with `d(head) = m`. The split exists and
    /// is unique for every `m` below the degree of `p`.
    pub fn factor(&self, p: &Path, m: &Degree) -> Result<(Path, Path), PathError> {
        assert_eq!(m.rank(), self.rank(), "degree rank mismatch");
        if !m.le(&p.degree) {
            return Err(PathError::DegreeOutOfRange {
                wanted: m.to_string(),
                have: p.degree.to_string(),
            });
        }
        let mut word = p.edges.clone();
        let mut head = Vec::with_capacity(m.total() as usize);
        for color in 1..=self.rank() {
            for _ in 0..m.coord(color) {
                let idx = word
                    .iter()
                    .position(|&e| self.color(e) == color)
                    .expect("degree bound guarantees an edge of this color");
                // Walk the edge to the front; every predecessor has a
                // different color, so each step is a square flip.
                for j in (1..=idx).rev() {
                    let (a, b) = (word[j - 1], word[j]);
                    let (x, y) = if self.color(a) > self.color(b) {
                        self.flip_sorted(a, b)
                    } else {
                        self.flip_unsorted(a, b)
                    };
                    word[j - 1] = x;
                    word[j] = y;
                }
                head.push(word.remove(0));
            }
        }
        let mid = match head.last() {
            Some(&e) => self.source(e),
            None => p.range,
        };
        if let Some(&first) = word.first() {
            debug_assert_eq!(self.range(first), mid);
        }
        debug_assert!(word.windows(2).all(|w| self.color(w[0]) <= self.color(w[1])));
        let head = Path {
            range: p.range,
            source: mid,
            degree: m.clone(),
            edges: head,
        };
        let tail = Path {
            range: mid,
            source: p.source,
            degree: p.degree.checked_sub(m).expect("m is below p"),
            edges: word,
        };
        Ok((head, tail))
    }

    /// All paths of degree `m` whose range is `v`, in a fixed order
    /// (normal-form words, edges tried in index order).
    pub fn paths_into(&self, v: VertexId, m: &Degree) -> Vec<Path> {
        assert_eq!(m.rank(), self.rank(), "degree rank mismatch");
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(m.total() as usize);
        self.paths_dfs(v, v, m, 1, 0, &mut word, &mut out);
        out
    }

    fn paths_dfs(
        &self,
        root: VertexId,
        at: VertexId,
        m: &Degree,
        color: usize,
        used: u32,
        word: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
    ) {
        let (mut color, mut used) = (color, used);
        while color <= self.rank() && used == m.coord(color) {
            color += 1;
            used = 0;
        }
        if color > self.rank() {
            out.push(Path {
                range: root,
                source: at,
                degree: m.clone(),
                edges: word.clone(),
            });
            return;
        }
        for &e in self.edges_into(at, color) {
            word.push(e);
            self.paths_dfs(root, self.source(e), m, color, used + 1, word, out);
            word.pop();
        }
    }

    /// Vertices reachable from `v` by walking edges range-to-source along
    /// the given colors. Always contains `v`.
    pub fn reachable(&self, v: VertexId, colors: FaceSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = vec![v];
        while let Some(u) = frontier.pop() {
            for c in colors.colors().filter(|&c| c <= self.rank()) {
                for &e in self.edges_into(u, c) {
                    let s = self.source(e);
                    if !seen.contains(s) {
                        seen.insert(s);
                        frontier.push(s);
                    }
                }
            }
        }
        seen
    }
}
