//! Symbolic classification engine for cohomogeneity-one group diagrams
//! (G, H, K⁻, K⁺) on closed, simply-connected spaces of dimension ≤ 7, with
//! the orbifold analysis of the resulting singular spaces: admissibility,
//! equivalence, fundamental groups, orbifold fundamental groups, good/bad
//! verdicts, and exhaustive enumeration against the classification tables.

pub mod ambient;
pub mod catalog;
pub mod homspace;
pub mod expr;
pub mod conc;
pub mod diagram;
pub mod intlin;
pub mod pi1;
pub mod qops;
pub mod subgroup;
pub mod orbifold;
pub mod symgroup;
pub mod tables;

pub use ambient::{AmbientGroup, Factor};
pub use subgroup::{QSub, SubgroupDescriptor};
