//! Exact verification toolkit for a two-parameter Baxterisation of
//! braid-like algebras.
//!
//! Everything is computed over exact rationals, so each identity check is a
//! comparison against zero with no tolerance involved.

pub mod algebra;
pub mod baxterisation;
pub mod catalog;
pub mod error;
pub mod integrability;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod scan;
pub mod suite;

pub use algebra::{CheckReport, MobiusParams, Relation, Witness};
pub use catalog::{Family, FamilyInstance};
pub use error::{Error, Result};
pub use linalg::{LocalOperator, Matrix};
pub use scalar::Scalar;
pub use suite::Check;
