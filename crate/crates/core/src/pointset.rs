//! Subsets of a finite point universe, packed into a single word.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest universe a [`PointSet`] can describe.
pub const MAX_POINTS: usize = 32;

/// A subset of `{0, .., n-1}` stored as a bitmask.
///
/// Sets are ordered canonically: first by cardinality, then lexicographically
/// on their ascending member lists, so `{0} < {2} < {0,1} < {0,2} < {1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: u32,
    n: u8,
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        PointSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        PointSet {
            bits: full_mask(n),
            n: n as u8,
        }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        debug_assert!(x < n);
        PointSet {
            bits: 1 << x,
            n: n as u8,
        }
    }

    /// Builds a set from raw bits; bits at or above `n` are rejected.
    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        if bits & !full_mask(n) != 0 {
            let point = (bits & !full_mask(n)).trailing_zeros() as usize;
            return Err(Error::PointOutOfRange { point, n });
        }
        Ok(PointSet { bits, n: n as u8 })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        PointSet { bits, n: n as u8 }
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        let mut bits = 0u32;
        for p in points {
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            bits |= 1 << p;
        }
        Ok(PointSet { bits, n: n as u8 })
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.universe())
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe() && self.bits & (1 << x) != 0
    }

    #[inline]
    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersects(&self, other: &PointSet) -> bool {
        self.bits & other.bits != 0
    }

    #[inline]
    pub fn union(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.n, other.n);
        PointSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn intersection(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.n, other.n);
        PointSet {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn complement(&self) -> PointSet {
        PointSet {
            bits: !self.bits & full_mask(self.universe()),
            n: self.n,
        }
    }

    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.universe());
        self.bits |= 1 << x;
    }

    /// Fails with `UniverseMismatch` unless both sets live over the same universe.
    pub fn check_universe(&self, n: usize) -> Result<()> {
        if self.universe() != n {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: self.universe(),
            });
        }
        Ok(())
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter {
        Iter { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        (self.bits != 0).then(|| 31 - self.bits.leading_zeros() as usize)
    }

    /// Every subset of this set, in ascending bitmask order.
    pub fn subsets(&self) -> Subsets {
        Subsets {
            mask: self.bits,
            next: Some(0),
            n: self.n,
        }
    }

    /// Every subset of the universe `{0..n-1}`, in ascending bitmask order.
    pub fn all_subsets(n: usize) -> Subsets {
        PointSet::full(n).subsets()
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else {
                    // the set owning the lowest differing point sorts first
                    let low = diff & diff.wrapping_neg();
                    if self.bits & low != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
            })
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}

impl serde::Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Iter {
    bits: u32,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Iter {}

/// Carry-rippler walk over the subsets of a mask.
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
    n: u8,
}

impl Iterator for Subsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(PointSet {
            bits: cur,
            n: self.n,
        })
    }
}
