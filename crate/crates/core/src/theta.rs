//! α-hulls and θ_α-closures.
//!
//! An α-hull of `A` is the top `U_α` of an increasing chain of opens
//! `U_0 ⊆ U_1 ⊆ .. ⊆ U_α`, each containing `A`, with `[U_β] ⊆ U_{β+1}`.
//! The tops at level `k` are computed by the recursion
//!
//! ```text
//! T_0(A)     = { open V : A ⊆ V }
//! T_{k+1}(A) = { open V : [W] ⊆ V for some W ∈ T_k(A) }
//! ```
//!
//! Each level is contained in the previous one and is upward closed among
//! the opens, so on a finite space the sequence stabilizes after at most
//! `|opens|` steps. A point `x` lies in `[A]_{θ_α}` when the closure of every
//! α-hull of `{x}` meets `A`; by monotonicity only inclusion-minimal hulls
//! need to be tested.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FinSpace;

/// Hull levels of a singleton, memoized on the space.
#[derive(Clone, Debug)]
pub(crate) struct SingletonHulls {
    levels: Vec<Vec<PointSet>>,
    minimal: Vec<Vec<PointSet>>,
    minimal_closures: Vec<Vec<PointSet>>,
}

impl SingletonHulls {
    fn build(space: &FinSpace, x: usize) -> Self {
        let levels = hull_levels(space, &PointSet::singleton(space.n(), x));
        let minimal: Vec<Vec<PointSet>> = levels.iter().map(|l| minimal_members(l)).collect();
        let minimal_closures = minimal
            .iter()
            .map(|l| l.iter().map(|v| space.closure_of(v)).collect())
            .collect();
        SingletonHulls {
            levels,
            minimal,
            minimal_closures,
        }
    }

    fn level(&self, alpha: usize) -> usize {
        alpha.min(self.levels.len() - 1)
    }
}

pub(crate) fn singleton_hulls(space: &FinSpace) -> &[SingletonHulls] {
    space
        .hull_memo
        .get_or_init(|| (0..space.n()).map(|x| SingletonHulls::build(space, x)).collect())
}

/// Closures of the inclusion-minimal α-hulls of `{y}`.
pub(crate) fn minimal_hull_closures(space: &FinSpace, y: usize, alpha: usize) -> &[PointSet] {
    let h = &singleton_hulls(space)[y];
    &h.minimal_closures[h.level(alpha)]
}

pub(crate) fn minimal_hulls(space: &FinSpace, y: usize, alpha: usize) -> &[PointSet] {
    let h = &singleton_hulls(space)[y];
    &h.minimal[h.level(alpha)]
}

/// Levels `T_0, T_1, ..` up to and including the first repeated level.
fn hull_levels(space: &FinSpace, a: &PointSet) -> Vec<Vec<PointSet>> {
    let first: Vec<PointSet> = space
        .opens()
        .iter()
        .filter(|v| a.is_subset(v))
        .copied()
        .collect();
    let mut levels = vec![first];
    loop {
        let prev = levels.last().unwrap();
        let closures: Vec<PointSet> = prev.iter().map(|w| space.closure_of(w)).collect();
        let next: Vec<PointSet> = space
            .opens()
            .iter()
            .filter(|v| closures.iter().any(|c| c.is_subset(v)))
            .copied()
            .collect();
        if &next == prev {
            return levels;
        }
        levels.push(next);
    }
}

fn minimal_members(family: &[PointSet]) -> Vec<PointSet> {
    family
        .iter()
        .filter(|v| !family.iter().any(|w| w != *v && w.is_subset(v)))
        .copied()
        .collect()
}

/// Every top of an α-hull of `a`, in canonical order. The full set is
/// always included.
pub fn hull_tops(space: &FinSpace, a: &PointSet, alpha: usize, minimal_only: bool) -> Result<Vec<PointSet>> {
    a.check_universe(space.n())?;
    if a.len() == 1 {
        let h = &singleton_hulls(space)[a.first().unwrap()];
        let k = h.level(alpha);
        return Ok(if minimal_only {
            h.minimal[k].clone()
        } else {
            h.levels[k].clone()
        });
    }
    let mut levels = hull_levels(space, a);
    let k = alpha.min(levels.len() - 1);
    let tops = levels.swap_remove(k);
    Ok(if minimal_only {
        minimal_members(&tops)
    } else {
        tops
    })
}

/// Smallest `k` with `T_{k+1}(a) = T_k(a)`; every α at or above it has the
/// same hull tops.
pub fn hull_stabilization_level(space: &FinSpace, a: &PointSet) -> Result<usize> {
    a.check_universe(space.n())?;
    Ok(hull_levels(space, a).len() - 1)
}

/// A chain `U_0 ⊆ .. ⊆ U_α` witnessing that `U_α` is an α-hull of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullChain<'a> {
    pub space: &'a FinSpace,
    pub base: PointSet,
    pub alpha: usize,
    pub chain: Vec<PointSet>,
}

impl HullChain<'_> {
    pub fn top(&self) -> PointSet {
        *self.chain.last().expect("chains are never empty")
    }

    /// Checks every hull invariant: length `α + 1`, open members that
    /// contain the base, and `[U_β] ⊆ U_{β+1}`.
    pub fn is_valid(&self) -> bool {
        self.chain.len() == self.alpha + 1
            && self
                .chain
                .iter()
                .all(|u| self.space.is_open(u) && self.base.is_subset(u))
            && self
                .chain
                .windows(2)
                .all(|w| self.space.closure_of(&w[0]).is_subset(&w[1]))
    }

    /// The first `beta + 1` links, itself a valid β-chain.
    pub fn truncate(&self, beta: usize) -> HullChain<'_> {
        HullChain {
            space: self.space,
            base: self.base,
            alpha: beta,
            chain: self.chain[..=beta.min(self.alpha)].to_vec(),
        }
    }
}

/// One chain ending at `top`. Built backwards from the top, choosing at each
/// level the canonical-first open of `T_β(base)` whose closure fits inside
/// the link above; membership of `top` in `T_α` guarantees such a choice.
pub fn witness_chain<'a>(space: &'a FinSpace, base: &PointSet, alpha: usize, top: &PointSet) -> Result<HullChain<'a>> {
    base.check_universe(space.n())?;
    top.check_universe(space.n())?;
    let levels = hull_levels(space, base);
    let level = |k: usize| &levels[k.min(levels.len() - 1)];
    if !level(alpha).contains(top) {
        return Err(Error::NotAHullTop {
            base: *base,
            alpha,
            top: *top,
        });
    }
    let mut chain = vec![*top];
    for beta in (0..alpha).rev() {
        let above = *chain.last().unwrap();
        let pick = level(beta)
            .iter()
            .find(|w| space.closure_of(w).is_subset(&above))
            .copied()
            .expect("a member of T_{k+1} has a predecessor in T_k");
        chain.push(pick);
    }
    chain.reverse();
    Ok(HullChain {
        space,
        base: *base,
        alpha,
        chain,
    })
}

/// `[A]_{θ_α}`; α = 0 gives the ordinary closure.
pub fn theta_closure(space: &FinSpace, a: &PointSet, alpha: usize) -> Result<PointSet> {
    a.check_universe(space.n())?;
    Ok(theta_closure_of(space, a, alpha))
}

pub(crate) fn theta_closure_of(space: &FinSpace, a: &PointSet, alpha: usize) -> PointSet {
    if alpha == 0 {
        return space.closure_of(a);
    }
    let mut out = space.empty();
    for x in 0..space.n() {
        if minimal_hull_closures(space, x, alpha)
            .iter()
            .all(|c| c.intersects(a))
        {
            out.insert(x);
        }
    }
    out
}

/// The classical θ-closure: `x` belongs when the closure of every open
/// neighbourhood of `x` meets `A`.
pub fn classical_theta_closure(space: &FinSpace, a: &PointSet) -> Result<PointSet> {
    a.check_universe(space.n())?;
    let mut out = space.empty();
    for x in 0..space.n() {
        // the minimal neighbourhood has the smallest closure
        if space.closure_of(&space.min_nbhd_of(x)).intersects(a) {
            out.insert(x);
        }
    }
    Ok(out)
}
