//! Exhaustive enumeration of the topologies on a small point set.
//!
//! Finite topologies correspond one-to-one with preorders on the points
//! (`x ≤ y` iff `y` lies in every neighbourhood of `x`). We walk every
//! reflexive relation, keep the transitive ones, and read off the open
//! sets as the up-closed subsets.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FinSpace;

/// Default ceiling on the enumeration size.
pub const DEFAULT_MAX_POINTS: usize = 4;
/// Ceiling when the size override is set.
pub const OVERRIDE_MAX_POINTS: usize = 5;

/// Checks `n` against the enumeration guard.
pub fn check_size_guard(what: &'static str, n: usize, allow_override: bool) -> Result<()> {
    let limit = if allow_override {
        OVERRIDE_MAX_POINTS
    } else {
        DEFAULT_MAX_POINTS
    };
    if n > limit {
        return Err(Error::SizeGuardExceeded {
            what,
            value: n,
            limit,
        });
    }
    Ok(())
}

/// Every topology on `{0..n-1}`, in canonical order (by the sorted open
/// family, compared open by open). With `t0_only`, spaces with two
/// topologically indistinguishable points are skipped.
pub fn enumerate_topologies(n: usize, t0_only: bool, allow_override: bool) -> Result<Vec<FinSpace>> {
    check_size_guard("point count", n, allow_override)?;
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut spaces = Vec::new();
    let mut up = vec![0u32; n];
    for code in 0u64..(1u64 << off_diagonal.len()) {
        for (x, u) in up.iter_mut().enumerate() {
            *u = 1 << x;
        }
        for (bit, &(x, y)) in off_diagonal.iter().enumerate() {
            if code >> bit & 1 == 1 {
                up[x] |= 1 << y;
            }
        }
        if !is_transitive(&up) {
            continue;
        }
        if t0_only && !is_antisymmetric(&up) {
            continue;
        }
        let mut opens: Vec<PointSet> = PointSet::all_subsets(n)
            .filter(|s| s.iter().all(|x| up[x] & !s.bits() == 0))
            .collect();
        opens.sort();
        spaces.push(FinSpace::from_canonical(n, opens));
    }
    spaces.sort();
    Ok(spaces)
}

fn is_transitive(up: &[u32]) -> bool {
    up.iter().all(|&ux| {
        PointSet::from_bits_unchecked(up.len(), ux)
            .iter()
            .all(|y| up[y] & !ux == 0)
    })
}

fn is_antisymmetric(up: &[u32]) -> bool {
    (0..up.len()).all(|x| {
        (0..up.len()).all(|y| x == y || up[x] >> y & 1 == 0 || up[y] >> x & 1 == 0)
    })
}

/// Position of `space` in `enumerate_topologies(space.n(), false, ..)`.
pub fn canonical_index(catalogue: &[FinSpace], space: &FinSpace) -> Option<usize> {
    catalogue.binary_search(space).ok()
}
