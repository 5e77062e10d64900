//! Deterministic randomized corpus of valid graphs.
//!
//! Four generator families cover the shapes the suites need: rank-1
//! multigraphs (no squares to get wrong), one-vertex rank-2 graphs with
//! an arbitrary square bijection, rank-2 graphs built from a pair of
//! commuting multiplicity matrices, and rank-3 graphs obtained either as
//! products of smaller graphs or as one-vertex graphs whose square
//! permutations are powers of a common cycle. Every generated graph is
//! validated; graphs whose T-lattice will not enumerate within a small
//! budget are dropped so the suites can afford full enumeration on every
//! corpus entry.

use std::sync::OnceLock;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use kgraph_ideals::fixtures::{edge_graph, loop_graph, mixed_graph, torus_graph};
use kgraph_ideals::{
    enumerate_families, validate, EdgeSpec, FamilyKind, KGraph, KGraphSpec, SearchLimits,
    SquareSpec,
};

use super::{edge, square, twist_graph};

const SEED: u64 = 0x6b67_7068_2026;

/// At least 200 valid graphs, |Γ⁰| ≤ 6, rank ≤ 3, identical on every run.
pub fn corpus() -> &'static [KGraph] {
    static CORPUS: OnceLock<Vec<KGraph>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

/// Corpus entries small enough for walk-quantified oracles: rank ≤ 2,
/// at most 4 vertices and 6 edges.
pub fn small_corpus() -> Vec<&'static KGraph> {
    corpus()
        .iter()
        .filter(|g| g.rank() <= 2 && g.vertex_count() <= 4 && g.edge_count() <= 6)
        .take(60)
        .collect()
}

/// Rank-3 corpus entries small enough for the brute-force family oracle.
pub fn tiny_rank3_corpus() -> Vec<&'static KGraph> {
    corpus()
        .iter()
        .filter(|g| g.rank() == 3 && g.vertex_count() <= 2)
        .collect()
}

fn build_corpus() -> Vec<KGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = vec![
        loop_graph(),
        edge_graph(),
        torus_graph(),
        mixed_graph(),
        twist_graph(),
    ];
    fill(&mut out, &mut rng, 80, rank1_spec);
    fill(&mut out, &mut rng, 50, one_vertex_rank2_spec);
    fill(&mut out, &mut rng, 35, matrix_rank2_spec);
    fill(&mut out, &mut rng, 15, product_rank2_spec);
    fill(&mut out, &mut rng, 10, small_product_rank3_spec);
    fill(&mut out, &mut rng, 12, product_rank3_spec);
    fill(&mut out, &mut rng, 10, commuting_loops_rank3_spec);
    assert!(out.len() >= 200, "corpus too small: {}", out.len());
    out
}

fn fill(
    out: &mut Vec<KGraph>,
    rng: &mut ChaCha8Rng,
    quota: usize,
    gen: fn(&mut ChaCha8Rng) -> KGraphSpec,
) {
    let mut added = 0;
    let mut tries = 0;
    while added < quota {
        tries += 1;
        assert!(tries <= quota * 50, "generator failed to fill its quota");
        let spec = gen(rng);
        let g = validate(&spec).unwrap_or_else(|e| panic!("generated graph invalid: {e}"));
        if affordable(&g) {
            out.push(g);
            added += 1;
        }
    }
}

/// Keeps only graphs whose T-lattice is modest; disjoint unions of
/// loops, for example, have lattices exponential in the vertex count.
fn affordable(g: &KGraph) -> bool {
    let limits = SearchLimits {
        max_candidates: 200_000,
        ..SearchLimits::default()
    };
    match enumerate_families(g, FamilyKind::T, &limits) {
        Ok(lat) => lat.len() <= 400,
        Err(_) => false,
    }
}

fn rank1_sized(rng: &mut ChaCha8Rng, nv: usize, max_edges: usize) -> KGraphSpec {
    let ne = rng.gen_range(0..=max_edges);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let edges = (0..ne)
        .map(|j| EdgeSpec {
            id: format!("e{j}"),
            color: 1,
            range: format!("v{}", rng.gen_range(0..nv)),
            source: format!("v{}", rng.gen_range(0..nv)),
        })
        .collect();
    KGraphSpec {
        rank: 1,
        vertices,
        edges,
        squares: vec![],
    }
}

fn rank1_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let nv = rng.gen_range(1..=6);
    rank1_sized(rng, nv, 8)
}

/// One vertex, p color-1 loops, q color-2 loops, squares given by an
/// arbitrary bijection between the two pair orders. Any bijection makes
/// a valid rank-2 graph.
fn one_vertex_rank2_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let p = rng.gen_range(1..=3);
    let q = rng.gen_range(1..=3);
    let mut edges = Vec::new();
    for i in 0..p {
        edges.push(edge(&format!("a{i}"), 1, "x", "x"));
    }
    for j in 0..q {
        edges.push(edge(&format!("b{j}"), 2, "x", "x"));
    }
    let mut rhs: Vec<(usize, usize)> = (0..q)
        .flat_map(|j| (0..p).map(move |i| (j, i)))
        .collect();
    rhs.shuffle(rng);
    let lhs = (0..p).flat_map(|i| (0..q).map(move |j| (i, j)));
    let squares = lhs
        .zip(rhs)
        .map(|((i, j), (j2, i2))| {
            square(
                (&format!("a{i}"), &format!("b{j}")),
                (&format!("b{j2}"), &format!("a{i2}")),
            )
        })
        .collect();
    KGraphSpec {
        rank: 2,
        vertices: vec!["x".into()],
        edges,
        squares,
    }
}

/// Rank-2 graph from a random color-1 multiplicity matrix M and the
/// commuting color-2 matrix αI + βM; squares pair the two composition
/// orders class by class, which is possible exactly because the
/// matrices commute.
fn matrix_rank2_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let nv = rng.gen_range(2..=4);
    let mut m1 = vec![vec![0usize; nv]; nv];
    for _ in 0..rng.gen_range(1..=4) {
        m1[rng.gen_range(0..nv)][rng.gen_range(0..nv)] += 1;
    }
    let alpha = rng.gen_range(0..=1usize);
    let beta = rng.gen_range(0..=1usize);
    let mut m2 = vec![vec![0usize; nv]; nv];
    for u in 0..nv {
        for w in 0..nv {
            m2[u][w] = beta * m1[u][w] + usize::from(u == w) * alpha;
        }
    }
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for u in 0..nv {
        for w in 0..nv {
            for t in 0..m1[u][w] {
                edges.push(edge(&format!("p{u}x{w}x{t}"), 1, &format!("v{u}"), &format!("v{w}")));
            }
            for t in 0..m2[u][w] {
                edges.push(edge(&format!("q{u}x{w}x{t}"), 2, &format!("v{u}"), &format!("v{w}")));
            }
        }
    }
    let mut squares = Vec::new();
    for u in 0..nv {
        let vu = format!("v{u}");
        for w in 0..nv {
            let vw = format!("v{w}");
            let mut lhs = Vec::new();
            for e in edges.iter().filter(|e| e.color == 1 && e.range == vu) {
                for f in edges
                    .iter()
                    .filter(|f| f.color == 2 && f.range == e.source && f.source == vw)
                {
                    lhs.push((e.id.clone(), f.id.clone()));
                }
            }
            let mut rhs = Vec::new();
            for f in edges.iter().filter(|f| f.color == 2 && f.range == vu) {
                for e in edges
                    .iter()
                    .filter(|e| e.color == 1 && e.range == f.source && e.source == vw)
                {
                    rhs.push((f.id.clone(), e.id.clone()));
                }
            }
            assert_eq!(lhs.len(), rhs.len(), "multiplicity matrices must commute");
            rhs.shuffle(rng);
            for (lo, hi) in lhs.into_iter().zip(rhs) {
                squares.push(SquareSpec { lo_hi: lo, hi_lo: hi });
            }
        }
    }
    KGraphSpec {
        rank: 2,
        vertices,
        edges,
        squares,
    }
}

/// Product graph: vertices are pairs, colors are the colors of the two
/// factors laid side by side, and every mixed pair of edges commutes
/// coordinatewise. Factor ids must not make `"{x}.{y}"` ambiguous; the
/// generators here use disjoint `v*`/`e*` namespaces.
pub fn product(a: &KGraph, b: &KGraph) -> KGraphSpec {
    let sa = a.to_spec();
    let sb = b.to_spec();
    let pv = |x: &str, y: &str| format!("{x}.{y}");
    let mut vertices = Vec::new();
    for va in &sa.vertices {
        for vb in &sb.vertices {
            vertices.push(pv(va, vb));
        }
    }
    let mut edges = Vec::new();
    for e in &sa.edges {
        for vb in &sb.vertices {
            edges.push(EdgeSpec {
                id: pv(&e.id, vb),
                color: e.color,
                range: pv(&e.range, vb),
                source: pv(&e.source, vb),
            });
        }
    }
    for va in &sa.vertices {
        for f in &sb.edges {
            edges.push(EdgeSpec {
                id: pv(va, &f.id),
                color: f.color + sa.rank,
                range: pv(va, &f.range),
                source: pv(va, &f.source),
            });
        }
    }
    let mut squares = Vec::new();
    for sq in &sa.squares {
        for vb in &sb.vertices {
            squares.push(SquareSpec {
                lo_hi: (pv(&sq.lo_hi.0, vb), pv(&sq.lo_hi.1, vb)),
                hi_lo: (pv(&sq.hi_lo.0, vb), pv(&sq.hi_lo.1, vb)),
            });
        }
    }
    for va in &sa.vertices {
        for sq in &sb.squares {
            squares.push(SquareSpec {
                lo_hi: (pv(va, &sq.lo_hi.0), pv(va, &sq.lo_hi.1)),
                hi_lo: (pv(va, &sq.hi_lo.0), pv(va, &sq.hi_lo.1)),
            });
        }
    }
    for e in &sa.edges {
        for f in &sb.edges {
            squares.push(SquareSpec {
                lo_hi: (pv(&e.id, &f.range), pv(&e.source, &f.id)),
                hi_lo: (pv(&e.range, &f.id), pv(&e.id, &f.source)),
            });
        }
    }
    KGraphSpec {
        rank: sa.rank + sb.rank,
        vertices,
        edges,
        squares,
    }
}

fn rank1_factor(rng: &mut ChaCha8Rng, nv: usize) -> KGraph {
    loop {
        let spec = rank1_sized(rng, nv, 3);
        if !spec.edges.is_empty() || rng.gen_bool(0.2) {
            return validate(&spec).expect("rank-1 factors are always valid");
        }
    }
}

fn product_rank2_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let na = rng.gen_range(1..=2);
    let a = rank1_factor(rng, na);
    let nb = rng.gen_range(1..=2);
    let b = rank1_factor(rng, nb);
    product(&a, &b)
}

fn product_rank3_sized(rng: &mut ChaCha8Rng, sizes: (usize, usize, usize)) -> KGraphSpec {
    let a = rank1_factor(rng, sizes.0);
    let b = rank1_factor(rng, sizes.1);
    let ab = validate(&product(&a, &b)).expect("rank-2 products are valid");
    let c = rank1_factor(rng, sizes.2);
    product(&ab, &c)
}

fn small_product_rank3_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let sizes = *[(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)]
        .choose(rng)
        .unwrap();
    product_rank3_sized(rng, sizes)
}

fn product_rank3_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let sizes = *[(2, 2, 1), (2, 1, 2), (1, 2, 2), (4, 1, 1)]
        .choose(rng)
        .unwrap();
    product_rank3_sized(rng, sizes)
}

/// One vertex; one loop in colors 1 and 2, q loops in color 3. The
/// color-1/3 and color-2/3 squares permute the z loops by powers of one
/// cycle, so all sorting diamonds commute.
fn commuting_loops_rank3_spec(rng: &mut ChaCha8Rng) -> KGraphSpec {
    let q = rng.gen_range(2..=3);
    let s = rng.gen_range(0..q);
    let t = rng.gen_range(0..q);
    let mut edges = vec![edge("a", 1, "x", "x"), edge("b", 2, "x", "x")];
    for k in 0..q {
        edges.push(edge(&format!("z{k}"), 3, "x", "x"));
    }
    let mut squares = vec![square(("a", "b"), ("b", "a"))];
    for k in 0..q {
        squares.push(square(
            ("a", &format!("z{k}")),
            (&format!("z{}", (k + s) % q), "a"),
        ));
        squares.push(square(
            ("b", &format!("z{k}")),
            (&format!("z{}", (k + t) % q), "b"),
        ));
    }
    KGraphSpec {
        rank: 3,
        vertices: vec!["x".into()],
        edges,
        squares,
    }
}

/// Fresh deterministic stream of presentations for round-trip tests;
/// includes every generator family.
pub fn spec_stream(count: usize) -> Vec<KGraphSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xfeed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        out.push(match k % 5 {
            0 => rank1_spec(&mut rng),
            1 => one_vertex_rank2_spec(&mut rng),
            2 => matrix_rank2_spec(&mut rng),
            3 => product_rank2_spec(&mut rng),
            _ => commuting_loops_rank3_spec(&mut rng),
        });
    }
    out
}
