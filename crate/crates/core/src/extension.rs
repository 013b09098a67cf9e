//! Extending a continuous map from a dense subset to the whole space.
//!
//! For an instance `(X, S, Y, f)` and a point `x` of `X`, `K(x)` is the family
//! of subsets `M ⊆ S` with `x ∈ [M]`. A θ-continuous extension exists when
//! `⋂_{M ∈ K(x)} [f(M)]` is nonempty at every point, and one can only exist
//! when `⋂_{M ∈ K(x)} [f(M)]_θ` is nonempty at every point.
//!
//! On a finite space `x ∈ [M]` iff `M` meets the minimal neighbourhood of
//! `x`, so both intersections reduce to intersections over the singletons
//! `{s}` with `s ∈ min_nbhd(x) ∩ S`.

use std::sync::Arc;

use serde::Serialize;

use crate::continuity::{is_continuous, is_theta_continuous, Verdict, Witness};
use crate::error::{Error, Result};
use crate::maps::{PartialMap, TotalMap};
use crate::pointset::PointSet;
use crate::space::FinSpace;
use crate::theta::theta_closure_of;

/// Limit on `|S|` for the literal enumeration of `K(x)`.
pub const K_FAMILY_MAX_DOMAIN: usize = 20;

/// `(X, S, Y, f)` with `S` dense in `X` and `f: S → Y` continuous on the
/// subspace topology of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionInstance {
    f: PartialMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionMode {
    Closure,
    Theta,
}

/// Which point of a nonempty candidate set to pick.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    Min,
    Max,
}

impl TieBreak {
    pub fn pick(self, set: &PointSet) -> Option<usize> {
        match self {
            TieBreak::Min => set.first(),
            TieBreak::Max => set.last(),
        }
    }
}

impl ExtensionInstance {
    /// Validates density of the domain and continuity of `f` on it.
    pub fn new(f: PartialMap) -> Result<Self> {
        let x = f.source();
        let s = f.domain();
        let closure = x.closure_of(&s);
        if !closure.is_full() {
            return Err(Error::DensityFailed { set: s, closure });
        }
        let (sub, relabel) = x.subspace(&s)?;
        let on_sub = TotalMap::new(Arc::new(sub), f.target().clone(), f.values())?;
        if let Verdict::Fails(Witness::Preimage { open, preimage }) = is_continuous(&on_sub) {
            let preimage = PointSet::from_points(x.n(), preimage.iter().map(|i| relabel[i]))?;
            return Err(Error::DiscontinuousMap { open, preimage });
        }
        Ok(ExtensionInstance { f })
    }

    /// Skips validation; callers vouch for density and continuity.
    pub(crate) fn new_unchecked(f: PartialMap) -> Self {
        ExtensionInstance { f }
    }

    pub fn from_parts(
        x: Arc<FinSpace>,
        y: Arc<FinSpace>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::new(PartialMap::new(x, y, pairs)?)
    }

    pub fn x(&self) -> &Arc<FinSpace> {
        self.f.source()
    }

    pub fn y(&self) -> &Arc<FinSpace> {
        self.f.target()
    }

    pub fn s(&self) -> PointSet {
        self.f.domain()
    }

    pub fn f(&self) -> &PartialMap {
        &self.f
    }

    /// Points of `X` outside `S`, ascending.
    pub fn free_points(&self) -> Vec<usize> {
        self.s().complement().to_vec()
    }
}

/// `K(x)`, enumerated literally from the closure operator, in canonical order.
pub fn k_family(inst: &ExtensionInstance, x: usize) -> Result<Vec<PointSet>> {
    inst.x().point(x)?;
    let s = inst.s();
    if s.len() > K_FAMILY_MAX_DOMAIN {
        return Err(Error::SizeGuardExceeded {
            what: "dense subset size",
            value: s.len(),
            limit: K_FAMILY_MAX_DOMAIN,
        });
    }
    let mut family: Vec<PointSet> = s
        .subsets()
        .filter(|m| inst.x().closure_of(m).contains(x))
        .collect();
    family.sort();
    Ok(family)
}

/// `⋂_{M ∈ K(x)} [f(M)]` (closure mode) or `⋂_{M ∈ K(x)} [f(M)]_θ` (theta
/// mode), through the singleton reduction.
pub fn condition_set(inst: &ExtensionInstance, x: usize, mode: ConditionMode) -> Result<PointSet> {
    inst.x().point(x)?;
    Ok(condition_set_of(inst, x, mode))
}

pub(crate) fn condition_set_of(inst: &ExtensionInstance, x: usize, mode: ConditionMode) -> PointSet {
    let y = inst.y();
    let near = inst.x().min_nbhd_of(x).intersection(&inst.s());
    near.iter().fold(y.full(), |acc, s| {
        let image = PointSet::singleton(y.n(), inst.f.get(s).unwrap());
        let closed = match mode {
            ConditionMode::Closure => y.closure_of(&image),
            ConditionMode::Theta => theta_closure_of(y, &image, 1),
        };
        acc.intersection(&closed)
    })
}

/// Pointwise condition sets and the two verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub e_closure: Vec<PointSet>,
    pub e_theta: Vec<PointSet>,
    pub sufficient_holds: bool,
    pub necessary_holds: bool,
}

impl ConditionReport {
    /// First point where the closure intersection is empty.
    pub fn sufficient_failure(&self) -> Option<usize> {
        self.e_closure.iter().position(PointSet::is_empty)
    }

    /// First point where the θ-closure intersection is empty.
    pub fn necessary_failure(&self) -> Option<usize> {
        self.e_theta.iter().position(PointSet::is_empty)
    }
}

pub fn check_conditions(inst: &ExtensionInstance) -> ConditionReport {
    let n = inst.x().n();
    let e_closure: Vec<PointSet> = (0..n)
        .map(|x| condition_set_of(inst, x, ConditionMode::Closure))
        .collect();
    let e_theta: Vec<PointSet> = (0..n)
        .map(|x| condition_set_of(inst, x, ConditionMode::Theta))
        .collect();
    ConditionReport {
        sufficient_holds: e_closure.iter().all(|e| !e.is_empty()),
        necessary_holds: e_theta.iter().all(|e| !e.is_empty()),
        e_closure,
        e_theta,
    }
}

/// `F = f` on `S`, and off `S` a common point of the sets `[f(M)]`,
/// `M ∈ K(x)`. The result is checked for θ-continuity before it is returned.
pub fn construct_extension(inst: &ExtensionInstance, tie_break: TieBreak) -> Result<TotalMap> {
    let s = inst.s();
    let mut assignment = Vec::with_capacity(inst.x().n());
    for x in 0..inst.x().n() {
        let value = match inst.f.get(x) {
            Some(v) => v,
            None => tie_break
                .pick(&condition_set_of(inst, x, ConditionMode::Closure))
                .ok_or(Error::ConditionFailed { point: x })?,
        };
        assignment.push(value);
    }
    let big_f = TotalMap::new(inst.x().clone(), inst.y().clone(), assignment)?;
    debug_assert!(s.iter().all(|x| Some(big_f.apply(x)) == inst.f.get(x)));
    if let Verdict::Fails(w) = is_theta_continuous(&big_f, 1) {
        return Err(Error::PostconditionViolated(format!(
            "constructed extension is not θ-continuous: {w:?}"
        )));
    }
    Ok(big_f)
}

/// Like [`construct_extension`] but every point, including those of `S`,
/// takes its value from its closure intersection, so `F` may differ from
/// `f` on `S`.
pub fn approximate_map(inst: &ExtensionInstance, tie_break: TieBreak) -> Result<TotalMap> {
    let assignment = (0..inst.x().n())
        .map(|x| {
            tie_break
                .pick(&condition_set_of(inst, x, ConditionMode::Closure))
                .ok_or(Error::ConditionFailed { point: x })
        })
        .collect::<Result<Vec<_>>>()?;
    let big_f = TotalMap::new(inst.x().clone(), inst.y().clone(), assignment)?;
    if let Verdict::Fails(w) = is_theta_continuous(&big_f, 1) {
        return Err(Error::PostconditionViolated(format!(
            "approximating map is not θ-continuous: {w:?}"
        )));
    }
    Ok(big_f)
}

/// `C(M) = { z ∈ M : f(z) ∈ V }`.
pub fn restrict_preimage(m: &PointSet, f: &PartialMap, v: &PointSet) -> Result<PointSet> {
    m.check_universe(f.source().n())?;
    v.check_universe(f.target().n())?;
    if let Some(z) = m.difference(&f.domain()).first() {
        return Err(Error::NotInDomain { point: z });
    }
    let mut out = f.source().empty();
    for (z, y) in f.pairs() {
        if m.contains(z) && v.contains(y) {
            out.insert(z);
        }
    }
    Ok(out)
}

/// An open `Ox ∋ x` with `Ox ⊆ [C(S)]` and `F(Ox) ⊆ [V]`, where
/// `C(S) = f⁻¹(V)`. Opens are tried smallest first.
pub fn witness_neighbourhood(
    inst: &ExtensionInstance,
    big_f: &TotalMap,
    x: usize,
    v: &PointSet,
) -> Result<PointSet> {
    let (xs, ys) = (inst.x(), inst.y());
    xs.point(x)?;
    v.check_universe(ys.n())?;
    if big_f.assignment().len() != xs.n() {
        return Err(Error::MapArity {
            expected: xs.n(),
            found: big_f.assignment().len(),
        });
    }
    if !ys.is_open(v) || !v.contains(big_f.apply(x)) {
        return Err(Error::NotANeighbourhood {
            set: *v,
            point: big_f.apply(x),
        });
    }
    let cs = restrict_preimage(&inst.s(), &inst.f, v)?;
    let cl_cs = xs.closure_of(&cs);
    let cl_v = ys.closure_of(v);
    xs.opens_containing(x)
        .find(|o| o.is_subset(&cl_cs) && big_f.image(o).is_subset(&cl_v))
        .copied()
        .ok_or(Error::NoWitness { point: x, target: *v })
}

/// For regular `Y`: the constructed extension, which is then continuous, or
/// `NoContinuousExtension` when the closure condition fails.
pub fn corollary_continuous_extension(inst: &ExtensionInstance, tie_break: TieBreak) -> Result<TotalMap> {
    if !inst.y().is_regular() {
        return Err(Error::NotRegular);
    }
    let big_f = construct_extension(inst, tie_break).map_err(|e| match e {
        Error::ConditionFailed { point } => Error::NoContinuousExtension { point },
        other => other,
    })?;
    if let Verdict::Fails(w) = is_continuous(&big_f) {
        return Err(Error::PostconditionViolated(format!(
            "extension into a regular space is not continuous: {w:?}"
        )));
    }
    Ok(big_f)
}
