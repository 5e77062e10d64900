//! Enumeration of all families of a given kind, and the lattice structure
//! on the result.
//!
//! Two independent routes produce the same answer. The oracle
//! [`brute_force_families`] filters every candidate assignment of
//! components and is only usable when `(2^|vertices|)^(2^rank)` fits the
//! budget. [`enumerate_families`] walks color subsets from the full set
//! downward; once all larger components are fixed, the admissible values
//! of a component are fixed points of a monotone operator, so they live
//! between its least and greatest fixed points and only that interval is
//! searched.
//!
//! Every family kind is closed under componentwise intersection, so the
//! enumerated set is a lattice: meets are intersections, joins are meets
//! of upper bounds.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::degree::FaceSet;
use crate::family::{
    is_invariant_family, is_t_family, FamilyKind, SubsetFamily,
};
use crate::graph::{KGraph, VertexSet};

/// Caps on a lattice search. `threads == 0` means one worker per
/// available core; output does not depend on the worker count.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Maximum number of candidate component values tested.
    pub max_candidates: u64,
    /// Optional wall-clock cap.
    pub time_budget: Option<Duration>,
    /// Worker count; 0 picks the available parallelism.
    pub threads: usize,
}

impl Default for SearchLimits {
    fn default() -> SearchLimits {
        SearchLimits {
            max_candidates: 1 << 22,
            time_budget: None,
            threads: 1,
        }
    }
}

impl SearchLimits {
    fn worker_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            n => n,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum LatticeError {
    #[error("search budget exceeded at {at} ({detail})")]
    BudgetExceeded { at: String, detail: String },
    #[error("families do not share a graph and kind")]
    KindMismatch,
    #[error("family is not an element of the lattice")]
    NotInLattice,
}

/// All families of one kind over one graph, sorted in a linear extension
/// of componentwise inclusion (so the least element is first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyLattice {
    kind: FamilyKind,
    graph_fp: u64,
    elements: Vec<SubsetFamily>,
}

impl FamilyLattice {
    fn from_elements(kind: FamilyKind, graph_fp: u64, mut elements: Vec<SubsetFamily>) -> Self {
        elements.sort();
        elements.dedup();
        FamilyLattice {
            kind,
            graph_fp,
            elements,
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SubsetFamily] {
        &self.elements
    }

    pub fn contains(&self, fam: &SubsetFamily) -> bool {
        self.elements.binary_search(fam).is_ok()
    }

    /// The componentwise-least element. Present in every nonempty lattice
    /// of a full kind because kinds are intersection-closed.
    pub fn bottom(&self) -> Option<&SubsetFamily> {
        self.elements.first()
    }

    pub fn top(&self) -> Option<&SubsetFamily> {
        self.elements.last()
    }
}

/// Componentwise intersection of two families of the same kind over the
/// same graph; the result is again of that kind.
pub fn meet(f1: &SubsetFamily, f2: &SubsetFamily) -> Result<SubsetFamily, LatticeError> {
    f1.intersect(f2).map_err(|_| LatticeError::KindMismatch)
}

/// Least upper bound of two lattice elements within the lattice: the meet
/// of all elements above both. The constant full family tops every kind,
/// so the bound exists.
pub fn join(
    f1: &SubsetFamily,
    f2: &SubsetFamily,
    lattice: &FamilyLattice,
) -> Result<SubsetFamily, LatticeError> {
    if !lattice.contains(f1) || !lattice.contains(f2) {
        return Err(LatticeError::NotInLattice);
    }
    let mut acc: Option<SubsetFamily> = None;
    for el in lattice.elements() {
        if f1.le(el) && f2.le(el) {
            acc = Some(match acc {
                None => el.clone(),
                Some(a) => a.intersect(el).expect("same graph"),
            });
        }
    }
    let out = acc.expect("lattice has no top above both arguments");
    debug_assert!(lattice.contains(&out));
    Ok(out)
}

/// Covering pairs `(lower, upper)` of the lattice order, as indices into
/// [`FamilyLattice::elements`], sorted.
pub fn hasse(lattice: &FamilyLattice) -> Vec<(usize, usize)> {
    let els = lattice.elements();
    let n = els.len();
    let mut lt = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            lt[i * n + j] = i != j && els[i].le(&els[j]);
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i * n + j] && !(0..n).any(|k| lt[i * n + k] && lt[k * n + j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Shared bookkeeping for one search run.
struct Budget {
    tested: AtomicU64,
    max: u64,
    deadline: Option<Instant>,
}

impl Budget {
    fn new(limits: &SearchLimits) -> Budget {
        Budget {
            tested: AtomicU64::new(0),
            max: limits.max_candidates,
            deadline: limits.time_budget.map(|d| Instant::now() + d),
        }
    }

    /// Accounts for one tested candidate.
    fn spend(&self, at: &dyn Fn() -> String) -> Result<(), LatticeError> {
        let n = self.tested.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.max {
            return Err(LatticeError::BudgetExceeded {
                at: at(),
                detail: format!("more than {} candidates", self.max),
            });
        }
        if n % 512 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(LatticeError::BudgetExceeded {
                        at: at(),
                        detail: "time budget spent".into(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Per-kind component tests shared by both enumerators.
struct KindCtx<'g> {
    g: &'g KGraph,
    kind: FamilyKind,
    /// Tracing set per color subset; only consulted for the absolute kind.
    u_sets: Vec<VertexSet>,
}

impl<'g> KindCtx<'g> {
    fn new(g: &'g KGraph, kind: FamilyKind) -> KindCtx<'g> {
        let u_sets = if kind == FamilyKind::O {
            FaceSet::all_subsets(g.rank()).map(|f| g.u_set(f)).collect()
        } else {
            Vec::new()
        };
        KindCtx { g, kind, u_sets }
    }

    /// Whole-family test (used by the brute-force oracle).
    fn family_ok(&self, fam: &SubsetFamily) -> bool {
        match self.kind {
            FamilyKind::T => is_t_family(self.g, fam),
            FamilyKind::O => {
                is_t_family(self.g, fam)
                    && fam
                        .components()
                        .all(|(face, s)| self.u_sets[face.index()].is_subset_of(s))
            }
            FamilyKind::Invariant => is_invariant_family(self.g, fam),
        }
    }

    /// Exact condition on one component, all larger components assigned.
    fn component_ok(&self, face: FaceSet, s: VertexSet, assign: &[VertexSet]) -> bool {
        if self.kind == FamilyKind::O && !self.u_sets[face.index()].is_subset_of(s) {
            return false;
        }
        let g = self.g;
        (1..=g.rank()).filter(|&c| !face.contains(c)).all(|c| {
            let bigger = assign[face.with(c).index()];
            match self.kind {
                FamilyKind::T | FamilyKind::O => {
                    g.edge_preimage(s, c).intersection(bigger) == s
                }
                FamilyKind::Invariant => g.edge_preimage(s.intersection(bigger), c) == s,
            }
        })
    }

    /// The monotone operator whose fixed points bracket the admissible
    /// values of a component. Fixed points of the exact per-color system
    /// are fixed points of this intersection, so the interval between its
    /// extremal fixed points contains every admissible value.
    fn phi(&self, face: FaceSet, s: VertexSet, assign: &[VertexSet]) -> VertexSet {
        let g = self.g;
        let mut acc = g.full_set();
        for c in (1..=g.rank()).filter(|&c| !face.contains(c)) {
            let bigger = assign[face.with(c).index()];
            let term = match self.kind {
                FamilyKind::T | FamilyKind::O => g.edge_preimage(s, c).intersection(bigger),
                FamilyKind::Invariant => g.edge_preimage(s.intersection(bigger), c),
            };
            acc = acc.intersection(term);
        }
        acc
    }

    /// Least and greatest fixed points of `phi` at this component, by
    /// Kleene iteration from the bottom and top of the subset lattice.
    fn fixed_point_interval(&self, face: FaceSet, assign: &[VertexSet]) -> (VertexSet, VertexSet) {
        let mut lo = VertexSet::EMPTY;
        loop {
            let next = self.phi(face, lo, assign);
            if next == lo {
                break;
            }
            lo = next;
        }
        let mut hi = self.g.full_set();
        loop {
            let next = self.phi(face, hi, assign);
            if next == hi {
                break;
            }
            hi = next;
        }
        (lo, hi)
    }
}

/// Filters every candidate family of the kind. The candidate space has
/// `(2^|vertices|)^(2^rank)` points; the call refuses politely when that
/// exceeds the budget.
pub fn brute_force_families(
    g: &KGraph,
    kind: FamilyKind,
    limits: &SearchLimits,
) -> Result<FamilyLattice, LatticeError> {
    let comps = 1u32 << g.rank();
    let vbits = g.vertex_count() as u32;
    let total_bits = vbits.checked_mul(comps).unwrap_or(u32::MAX);
    if total_bits >= 64 || (1u64 << total_bits) > limits.max_candidates {
        return Err(LatticeError::BudgetExceeded {
            at: "candidate space".into(),
            detail: format!(
                "(2^{})^{} candidates exceed the budget of {}",
                vbits, comps, limits.max_candidates
            ),
        });
    }
    let total = 1u64 << total_bits;
    let ctx = KindCtx::new(g, kind);
    let budget = Budget::new(limits);
    let vmask = if vbits == 0 { 0 } else { (1u128 << vbits) - 1 };

    let run = |from: u64, to: u64| -> Result<Vec<SubsetFamily>, LatticeError> {
        let mut found = Vec::new();
        for k in from..to {
            budget.spend(&|| "candidate space".to_string())?;
            let entries: Vec<VertexSet> = (0..comps)
                .map(|j| VertexSet::from_bits((k as u128 >> (j * vbits)) & vmask))
                .collect();
            let fam = SubsetFamily::new(g, entries).expect("masks are sets");
            if ctx.family_ok(&fam) {
                found.push(fam);
            }
        }
        Ok(found)
    };

    let workers = limits.worker_count().min(total.max(1) as usize).max(1);
    let found = if workers <= 1 {
        run(0, total)?
    } else {
        let chunk = total.div_ceil(workers as u64);
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let from = chunk * w as u64;
                    let to = (from + chunk).min(total);
                    let run = &run;
                    scope.spawn(move || run(from, to))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut all = Vec::new();
        for r in results {
            all.extend(r?);
        }
        all
    };
    Ok(FamilyLattice::from_elements(kind, g.fingerprint(), found))
}

/// Enumerates all families of the kind by componentwise search, largest
/// color subsets first. Equal to the brute-force result wherever both run.
pub fn enumerate_families(
    g: &KGraph,
    kind: FamilyKind,
    limits: &SearchLimits,
) -> Result<FamilyLattice, LatticeError> {
    let rank = g.rank();
    let mut order: Vec<FaceSet> = FaceSet::all_subsets(rank).collect();
    order.sort_by_key(|f| (std::cmp::Reverse(f.len()), f.mask()));
    debug_assert_eq!(order[0], FaceSet::full(rank));

    let ctx = KindCtx::new(g, kind);
    let budget = Budget::new(limits);

    // Top component: unconstrained from above; for the absolute kind it
    // must contain the full-face tracing set.
    let top_lo = if kind == FamilyKind::O {
        g.u_set(FaceSet::full(rank))
    } else {
        VertexSet::EMPTY
    };
    let free_bits = g.full_set().difference(top_lo).len();
    if free_bits >= 64 || (1u64 << free_bits) > limits.max_candidates {
        return Err(LatticeError::BudgetExceeded {
            at: format!("component {}", FaceSet::full(rank)),
            detail: format!(
                "2^{} top candidates exceed the budget of {}",
                free_bits, limits.max_candidates
            ),
        });
    }
    let tops: Vec<VertexSet> = VertexSet::interval(top_lo, g.full_set()).collect();

    let run = |tops: &[VertexSet]| -> Result<Vec<SubsetFamily>, LatticeError> {
        let mut found = Vec::new();
        let mut assign = vec![VertexSet::EMPTY; 1 << rank];
        for &top in tops {
            budget.spend(&|| format!("component {}", FaceSet::full(rank)))?;
            if !ctx.component_ok(FaceSet::full(rank), top, &assign) {
                continue;
            }
            assign[FaceSet::full(rank).index()] = top;
            dfs(g, &ctx, &budget, &order, 1, &mut assign, &mut found)?;
        }
        Ok(found)
    };

    let workers = limits.worker_count().min(tops.len().max(1)).max(1);
    let found = if workers <= 1 {
        run(&tops)?
    } else {
        let chunk = tops.len().div_ceil(workers);
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = tops
                .chunks(chunk)
                .map(|slice| {
                    let run = &run;
                    scope.spawn(move || run(slice))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut all = Vec::new();
        for r in results {
            all.extend(r?);
        }
        all
    };
    Ok(FamilyLattice::from_elements(kind, g.fingerprint(), found))
}

fn dfs(
    g: &KGraph,
    ctx: &KindCtx,
    budget: &Budget,
    order: &[FaceSet],
    depth: usize,
    assign: &mut Vec<VertexSet>,
    found: &mut Vec<SubsetFamily>,
) -> Result<(), LatticeError> {
    if depth == order.len() {
        found.push(SubsetFamily::new(g, assign.clone()).expect("assigned sets are sets"));
        return Ok(());
    }
    let face = order[depth];
    let (mut lo, hi) = ctx.fixed_point_interval(face, assign);
    if ctx.kind == FamilyKind::O {
        lo = lo.union(ctx.u_sets[face.index()]);
    }
    for s in VertexSet::interval(lo, hi) {
        budget.spend(&|| format!("component {face}"))?;
        if !ctx.component_ok(face, s, assign) {
            continue;
        }
        assign[face.index()] = s;
        dfs(g, ctx, budget, order, depth + 1, assign, found)?;
    }
    Ok(())
}
