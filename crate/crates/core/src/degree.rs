//! Multidegrees over `Nat^n` and sets of colors.
//!
//! A rank-`n` graph grades its paths by a vector of edge counts, one
//! coordinate per color. Colors are numbered `1..=n`; a [`FaceSet`] is a
//! subset of `{1, .., n}` stored as a bitmask so that subsets of the color
//! set can double as dense array indices.

use std::fmt;

/// Hard cap on the rank. Keeps `FaceSet` in a `u16` and family storage
/// (one entry per subset of colors) at a sane size.
pub const MAX_RANK: usize = 16;

/// A subset of the color set `{1, .., n}`.
///
/// Bit `i - 1` is set when color `i` is present. The numeric value of the
/// mask orders all subsets of a fixed rank; that order is used as the index
/// order for family storage and for every serialized listing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FaceSet(u16);

impl FaceSet {
    pub const EMPTY: FaceSet = FaceSet(0);

    /// The full color set `{1, .., n}`.
    pub fn full(rank: usize) -> FaceSet {
        debug_assert!(rank <= MAX_RANK);
        FaceSet(((1u32 << rank) - 1) as u16)
    }

    /// Builds a set from 1-based colors. Panics on color 0.
    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> FaceSet {
        let mut mask = 0u16;
        for c in colors {
            assert!(c >= 1 && c <= MAX_RANK, "color out of range: {c}");
            mask |= 1 << (c - 1);
        }
        FaceSet(mask)
    }

    pub fn from_mask(mask: u16) -> FaceSet {
        FaceSet(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// Index of this subset in the fixed enumeration of all subsets.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, color: usize) -> bool {
        color >= 1 && color <= MAX_RANK && self.0 & (1 << (color - 1)) != 0
    }

    pub fn with(self, color: usize) -> FaceSet {
        debug_assert!(color >= 1 && color <= MAX_RANK);
        FaceSet(self.0 | 1 << (color - 1))
    }

    pub fn without(self, color: usize) -> FaceSet {
        debug_assert!(color >= 1 && color <= MAX_RANK);
        FaceSet(self.0 & !(1 << (color - 1)))
    }

    pub fn union(self, other: FaceSet) -> FaceSet {
        FaceSet(self.0 | other.0)
    }

    pub fn intersection(self, other: FaceSet) -> FaceSet {
        FaceSet(self.0 & other.0)
    }

    pub fn complement(self, rank: usize) -> FaceSet {
        FaceSet(Self::full(rank).0 & !self.0)
    }

    pub fn is_subset_of(self, other: FaceSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Colors in ascending order.
    pub fn colors(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=MAX_RANK).filter(move |c| mask & (1 << (c - 1)) != 0)
    }

    /// All subsets of `{1, .., n}` in mask order (the canonical family order).
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = FaceSet> {
        debug_assert!(rank <= MAX_RANK);
        (0u32..(1u32 << rank)).map(|m| FaceSet(m as u16))
    }

    /// Subsets of `{1, .., n}` that contain `self`.
    pub fn supersets(self, rank: usize) -> impl Iterator<Item = FaceSet> {
        Self::all_subsets(rank).filter(move |g| self.is_subset_of(*g))
    }
}

impl fmt::Display for FaceSet {
    /// Renders as `{}` or `{1,3}`; the same notation is accepted back by
    /// the file formats and by extended-graph id parsing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for c in self.colors() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the `{1,3}` notation produced by [`FaceSet::fmt`].
pub fn parse_face_set(text: &str) -> Option<FaceSet> {
    let inner = text.strip_prefix('{')?.strip_suffix('}')?;
    let mut mask = FaceSet::EMPTY;
    if inner.is_empty() {
        return Some(mask);
    }
    let mut last = 0usize;
    for part in inner.split(',') {
        let c: usize = part.parse().ok()?;
        if c < 1 || c > MAX_RANK || c <= last {
            return None;
        }
        last = c;
        mask = mask.with(c);
    }
    Some(mask)
}

/// An element of `Nat^n`: one count per color.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(rank: usize) -> Degree {
        Degree(vec![0; rank])
    }

    /// The unit vector for one color.
    pub fn unit(color: usize, rank: usize) -> Degree {
        assert!(color >= 1 && color <= rank, "color out of range: {color}");
        let mut v = vec![0; rank];
        v[color - 1] = 1;
        Degree(v)
    }

    /// The characteristic vector of a color set.
    pub fn of_face(face: FaceSet, rank: usize) -> Degree {
        Degree((1..=rank).map(|c| face.contains(c) as u32).collect())
    }

    pub fn from_coords(coords: Vec<u32>) -> Degree {
        Degree(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Count for a 1-based color.
    pub fn coord(&self, color: usize) -> u32 {
        self.0[color - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total number of edges in a path of this degree.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Colors with a nonzero count.
    pub fn support(&self) -> FaceSet {
        FaceSet::from_colors((1..=self.rank()).filter(|&c| self.coord(c) > 0))
    }

    /// Coordinatewise order; this is a partial order, `le` and `ge` can both
    /// fail for the same pair.
    pub fn le(&self, other: &Degree) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinatewise difference; `None` unless `other.le(self)`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        debug_assert_eq!(self.rank(), other.rank());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Degree)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// True when the two degrees touch no common color.
    pub fn orthogonal(&self, other: &Degree) -> bool {
        self.support().intersection(other.support()).is_empty()
    }

    /// All degrees `m` with `m.le(self)`, in lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Degree::zero(self.rank())];
        for c in 1..=self.rank() {
            let prev = std::mem::take(&mut out);
            for d in prev {
                for count in 0..=self.coord(c) {
                    let mut v = d.0.clone();
                    v[c - 1] = count;
                    out.push(Degree(v));
                }
            }
        }
        out
    }
}

impl fmt::Display for Degree {
    /// Renders as `(1,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
