use thiserror::Error;

use crate::pointset::PointSet;

/// Errors raised by space construction, the closure operators, and the
/// extension machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("MissingEmptyOrFull: the family must contain both the empty set and the full set")]
    MissingEmptyOrFull,
    #[error("NotClosedUnderUnion: {a} ∪ {b} = {union} is not open")]
    NotClosedUnderUnion {
        a: PointSet,
        b: PointSet,
        union: PointSet,
    },
    #[error("NotClosedUnderIntersection: {a} ∩ {b} = {meet} is not open")]
    NotClosedUnderIntersection {
        a: PointSet,
        b: PointSet,
        meet: PointSet,
    },
    #[error("PointOutOfRange: point {point} is not below universe size {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("UniverseMismatch: expected a set over {expected} points, got {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("UniverseTooLarge: {n} points exceeds the supported maximum of {max}")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("EmptySubspace: a subspace needs at least one point")]
    EmptySubspace,
    #[error("SizeGuardExceeded: {what} is {value}, limit is {limit}")]
    SizeGuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("NotAHullTop: {top} is not the top of any {alpha}-hull of {base}")]
    NotAHullTop {
        base: PointSet,
        alpha: usize,
        top: PointSet,
    },
    #[error("NotOpen: {set} is not open")]
    NotOpen { set: PointSet },
    #[error("NotANeighbourhood: {set} is not an open set containing point {point}")]
    NotANeighbourhood { set: PointSet, point: usize },
    #[error("NotInDomain: point {point} is outside the domain of the map")]
    NotInDomain { point: usize },
    #[error("MapArity: map assigns {found} points, source has {expected}")]
    MapArity { expected: usize, found: usize },
    #[error("DensityFailed: {set} is not dense (closure is {closure})")]
    DensityFailed { set: PointSet, closure: PointSet },
    #[error("DiscontinuousMap: f is not continuous on S; preimage of open {open} is {preimage}, not open in the subspace")]
    DiscontinuousMap { open: PointSet, preimage: PointSet },
    #[error("ConditionFailed: the closure intersection is empty at point {point}")]
    ConditionFailed { point: usize },
    #[error("NoWitness: no open neighbourhood of point {point} qualifies for {target}")]
    NoWitness { point: usize, target: PointSet },
    #[error("NotRegular: the target space is not regular")]
    NotRegular,
    #[error("NoContinuousExtension: the closure intersection is empty at point {point}")]
    NoContinuousExtension { point: usize },
    #[error("PostconditionViolated: {0}")]
    PostconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
