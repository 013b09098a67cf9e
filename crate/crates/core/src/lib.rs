//! Finite topological spaces, α-hulls and θ_α-closures, θ-continuity, and
//! the extension of continuous maps from dense subsets.
//!
//! Points of a space are the ids `0..n`; subsets are [`PointSet`]s. The
//! [`oracle`] module sweeps every small instance by brute force and checks
//! the extension criteria against exhaustive search.

pub mod continuity;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod maps;
pub mod oracle;
pub mod pointset;
pub mod space;
pub mod theta;

pub use continuity::{
    closure_criterion, is_classical_weakly_continuous, is_continuous, is_theta_continuous,
    is_theta_continuous_literal, Verdict, Witness,
};
pub use enumerate::enumerate_topologies;
pub use error::{Error, Result};
pub use extension::{
    approximate_map, check_conditions, condition_set, construct_extension,
    corollary_continuous_extension, k_family, restrict_preimage, witness_neighbourhood,
    ConditionMode, ConditionReport, ExtensionInstance, TieBreak,
};
pub use maps::{PartialMap, TotalMap};
pub use oracle::{SweepConfig, VerificationReport};
pub use pointset::PointSet;
pub use space::{build_space, subspace_topology, FinSpace};
pub use theta::{classical_theta_closure, hull_tops, theta_closure, witness_chain, HullChain};
