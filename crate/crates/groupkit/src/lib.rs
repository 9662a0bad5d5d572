//! Group-theoretic backend: exact unit-quaternion arithmetic for the finite
//! subgroups of S³, finitely presented groups with bounded coset enumeration,
//! integer Smith normal form, and small concrete groups given by
//! multiplication tables.

pub mod concrete;
pub mod fp;
pub mod quat;
pub mod snf;
pub mod todd_coxeter;
pub mod word;

pub use concrete::FiniteGroupConcrete;
pub use fp::{FpGroup, Order};
pub use quat::{FiniteSubgroupS3, QuatElem, S3SubgroupFact};
pub use word::Word;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not in catalog: {0}")]
    NotInCatalog(String),
    #[error("size exceeded: |A| = {a}, |B| = {b}")]
    SizeExceeded { a: usize, b: usize },
    #[error("enumeration did not close below cap {0}")]
    CapExceeded(usize),
}
