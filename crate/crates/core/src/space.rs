//! Finite topological spaces given by their full family of open sets.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::theta::SingletonHulls;

/// A finite topological space on the points `0..n`.
///
/// The open sets are stored explicitly in canonical order, so spaces that
/// are not T0 are represented as faithfully as any other.
pub struct FinSpace {
    n: usize,
    opens: Vec<PointSet>,
    min_nbhd: Vec<PointSet>,
    pub(crate) hull_memo: OnceLock<Vec<SingletonHulls>>,
}

impl FinSpace {
    /// Validates and canonicalizes a family of open sets.
    pub fn new(n: usize, opens: Vec<PointSet>) -> Result<FinSpace> {
        if n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        for u in &opens {
            u.check_universe(n)?;
        }
        let mut opens = opens;
        opens.sort();
        opens.dedup();
        let members: HashSet<u32> = opens.iter().map(|u| u.bits()).collect();
        if !members.contains(&0) || !members.contains(&PointSet::full(n).bits()) {
            return Err(Error::MissingEmptyOrFull);
        }
        for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                let union = a.union(b);
                if !members.contains(&union.bits()) {
                    return Err(Error::NotClosedUnderUnion { a: *a, b: *b, union });
                }
                let meet = a.intersection(b);
                if !members.contains(&meet.bits()) {
                    return Err(Error::NotClosedUnderIntersection { a: *a, b: *b, meet });
                }
            }
        }
        Ok(Self::from_canonical(n, opens))
    }

    /// Assumes `opens` is already a sorted, duplicate-free topology.
    pub(crate) fn from_canonical(n: usize, opens: Vec<PointSet>) -> FinSpace {
        let min_nbhd = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(PointSet::full(n), |acc, u| acc.intersection(u))
            })
            .collect();
        FinSpace {
            n,
            opens,
            min_nbhd,
            hull_memo: OnceLock::new(),
        }
    }

    pub fn discrete(n: usize) -> FinSpace {
        Self::from_canonical(n, {
            let mut v: Vec<PointSet> = PointSet::all_subsets(n).collect();
            v.sort();
            v
        })
    }

    pub fn indiscrete(n: usize) -> FinSpace {
        let mut v = vec![PointSet::empty(n), PointSet::full(n)];
        v.dedup();
        Self::from_canonical(n, v)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn empty(&self) -> PointSet {
        PointSet::empty(self.n)
    }

    pub fn point(&self, x: usize) -> Result<usize> {
        if x >= self.n {
            return Err(Error::PointOutOfRange { point: x, n: self.n });
        }
        Ok(x)
    }

    /// Builds a set over this space's universe.
    pub fn set<I: IntoIterator<Item = usize>>(&self, points: I) -> Result<PointSet> {
        PointSet::from_points(self.n, points)
    }

    /// A set is open iff it contains the minimal neighbourhood of each member.
    pub fn is_open(&self, u: &PointSet) -> bool {
        u.universe() == self.n && u.iter().all(|x| self.min_nbhd[x].is_subset(u))
    }

    /// Intersection of all opens containing `x`; itself open.
    pub fn min_nbhd(&self, x: usize) -> Result<PointSet> {
        self.point(x)?;
        Ok(self.min_nbhd[x])
    }

    #[inline]
    pub(crate) fn min_nbhd_of(&self, x: usize) -> PointSet {
        self.min_nbhd[x]
    }

    /// Opens that contain `x`, in canonical order (the minimal neighbourhood first).
    pub fn opens_containing(&self, x: usize) -> impl Iterator<Item = &PointSet> + '_ {
        self.opens.iter().filter(move |u| u.contains(x))
    }

    /// `[A]`: points whose every neighbourhood meets `A`.
    pub fn closure(&self, a: &PointSet) -> Result<PointSet> {
        a.check_universe(self.n)?;
        Ok(self.closure_of(a))
    }

    #[inline]
    pub(crate) fn closure_of(&self, a: &PointSet) -> PointSet {
        let mut bits = 0u32;
        for (x, m) in self.min_nbhd.iter().enumerate() {
            if m.intersects(a) {
                bits |= 1 << x;
            }
        }
        PointSet::from_bits_unchecked(self.n, bits)
    }

    pub fn is_dense(&self, s: &PointSet) -> Result<bool> {
        Ok(self.closure(s)?.is_full())
    }

    /// Regularity with no separation axiom: every neighbourhood `U` of a
    /// point contains the closure of some smaller neighbourhood.
    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|x| {
            self.opens_containing(x).all(|u| {
                self.opens_containing(x)
                    .any(|v| self.closure_of(v).is_subset(u))
            })
        })
    }

    /// `x` specializes to `y` when `x ∈ [{y}]`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.min_nbhd[x].contains(y)
    }

    /// True when no two points share all their open sets.
    pub fn is_t0(&self) -> bool {
        let mut seen = HashSet::new();
        self.min_nbhd.iter().all(|m| seen.insert(m.bits()))
    }

    /// The subspace on `s`, with points relabeled `0..|s|` in ascending order.
    /// The second component maps new ids back to ids of `self`.
    pub fn subspace(&self, s: &PointSet) -> Result<(FinSpace, Vec<usize>)> {
        s.check_universe(self.n)?;
        if s.is_empty() {
            return Err(Error::EmptySubspace);
        }
        let relabel = s.to_vec();
        let m = relabel.len();
        let mut traces: Vec<PointSet> = self
            .opens
            .iter()
            .map(|u| {
                PointSet::from_points(
                    m,
                    relabel
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| u.contains(p))
                        .map(|(i, _)| i),
                )
                .expect("relabeled ids are in range")
            })
            .collect();
        traces.sort();
        traces.dedup();
        Ok((FinSpace::from_canonical(m, traces), relabel))
    }

    /// Point lists of the opens, in canonical order.
    pub fn open_lists(&self) -> Vec<Vec<usize>> {
        self.opens.iter().map(PointSet::to_vec).collect()
    }
}

/// Convenience constructor from point lists.
pub fn build_space(n: usize, opens: &[Vec<usize>]) -> Result<FinSpace> {
    if n > MAX_POINTS {
        return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
    }
    let sets = opens
        .iter()
        .map(|u| PointSet::from_points(n, u.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    FinSpace::new(n, sets)
}

/// Re-exposed as a free function alongside [`build_space`].
pub fn subspace_topology(space: &FinSpace, s: &PointSet) -> Result<(FinSpace, Vec<usize>)> {
    space.subspace(s)
}

impl Clone for FinSpace {
    fn clone(&self) -> Self {
        FinSpace {
            n: self.n,
            opens: self.opens.clone(),
            min_nbhd: self.min_nbhd.clone(),
            hull_memo: self.hull_memo.clone(),
        }
    }
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.opens == other.opens
    }
}

impl Eq for FinSpace {}

impl Ord for FinSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.opens.cmp(&other.opens))
    }
}

impl PartialOrd for FinSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for FinSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.opens.hash(state);
    }
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinSpace")
            .field("n", &self.n)
            .field("opens", &self.opens)
            .finish()
    }
}
