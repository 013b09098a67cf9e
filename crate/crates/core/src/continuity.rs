//! Continuity verdicts for total maps between finite spaces.
//!
//! Every check returns a [`Verdict`]; failures carry the data needed to
//! see why (the point, the target set, and the offending image).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::TotalMap;
use crate::pointset::PointSet;
use crate::theta::{minimal_hulls, theta_closure_of};

/// Why a continuity property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The preimage of an open set of the target is not open.
    Preimage { open: PointSet, preimage: PointSet },
    /// No neighbourhood of `point` maps into `allowed`; `image` is the image
    /// of the smallest neighbourhood of `point`. `target_set` is the hull top
    /// or neighbourhood of `F(point)` being tested.
    Neighbourhood {
        point: usize,
        target_set: PointSet,
        allowed: PointSet,
        image: PointSet,
    },
    /// `F([A])` is not inside `[F(A)]_{θ_α}`.
    ClosureImage {
        set: PointSet,
        image_of_closure: PointSet,
        theta_closure_of_image: PointSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Source size limit for [`closure_criterion`], which walks every subset.
pub const CLOSURE_CRITERION_MAX_POINTS: usize = 16;

/// Preimages of opens are open.
pub fn is_continuous(f: &TotalMap) -> Verdict {
    let (x, y) = (f.source(), f.target());
    for v in y.opens() {
        let pre = f.preimage(v);
        if !x.is_open(&pre) {
            return Verdict::Fails(Witness::Preimage {
                open: *v,
                preimage: pre,
            });
        }
    }
    Verdict::Holds
}

/// θ_α-continuity: for every `x` and every α-hull `V` of `F(x)` some
/// neighbourhood of `x` maps into `[V]`. At α = 0 this is plain continuity.
pub fn is_theta_continuous(f: &TotalMap, alpha: usize) -> Verdict {
    if alpha == 0 {
        return is_continuous(f);
    }
    hull_condition(f, alpha)
}

/// The hull condition read literally at every α, including α = 0 where the
/// hulls are just the open neighbourhoods of `F(x)` (classical weak
/// continuity) instead of plain continuity.
pub fn is_theta_continuous_literal(f: &TotalMap, alpha: usize) -> Verdict {
    hull_condition(f, alpha)
}

fn hull_condition(f: &TotalMap, alpha: usize) -> Verdict {
    let (x_space, y_space) = (f.source(), f.target());
    for x in 0..x_space.n() {
        // F(min_nbhd(x)) ⊆ F(Ox) for every neighbourhood Ox, so it decides
        let image = f.image(&x_space.min_nbhd_of(x));
        for v in minimal_hulls(y_space, f.apply(x), alpha) {
            let allowed = y_space.closure_of(v);
            if !image.is_subset(&allowed) {
                return Verdict::Fails(Witness::Neighbourhood {
                    point: x,
                    target_set: *v,
                    allowed,
                    image,
                });
            }
        }
    }
    Verdict::Holds
}

/// `F([A]) ⊆ [F(A)]_{θ_α}` for every subset `A` of the source.
pub fn closure_criterion(f: &TotalMap, alpha: usize) -> Result<Verdict> {
    let (x_space, y_space) = (f.source(), f.target());
    if x_space.n() > CLOSURE_CRITERION_MAX_POINTS {
        return Err(Error::SizeGuardExceeded {
            what: "source point count",
            value: x_space.n(),
            limit: CLOSURE_CRITERION_MAX_POINTS,
        });
    }
    for a in PointSet::all_subsets(x_space.n()) {
        let image_of_closure = f.image(&x_space.closure_of(&a));
        let theta = theta_closure_of(y_space, &f.image(&a), alpha);
        if !image_of_closure.is_subset(&theta) {
            return Ok(Verdict::Fails(Witness::ClosureImage {
                set: a,
                image_of_closure,
                theta_closure_of_image: theta,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Classical weak continuity: every open `V ∋ F(x)` admits a neighbourhood
/// of `x` mapping into `[V]`.
pub fn is_classical_weakly_continuous(f: &TotalMap) -> Verdict {
    let (x_space, y_space) = (f.source(), f.target());
    for x in 0..x_space.n() {
        let image = f.image(&x_space.min_nbhd_of(x));
        let v = y_space.min_nbhd_of(f.apply(x));
        let allowed = y_space.closure_of(&v);
        if !image.is_subset(&allowed) {
            return Verdict::Fails(Witness::Neighbourhood {
                point: x,
                target_set: v,
                allowed,
                image,
            });
        }
    }
    Verdict::Holds
}
