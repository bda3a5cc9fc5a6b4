//! Exact workbench for small oriented matroids.
//!
//! Chirotopes are enumerated up to reorientation, reduced to sign-constrained
//! polynomial systems, and realized by an elimination/branching search whose
//! witnesses are verified with exact rational determinants. The geometry
//! module turns realized matroid polytopes into face lattices and census
//! counts.

pub mod chirotope;
pub mod covectors;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod grassmann;
pub mod polysys;
pub mod realization;
pub mod reduce;
pub mod sign;
pub mod solve;
pub mod symmetry;
pub mod tuple;

pub use chirotope::{AxiomCheck, Chirotope};
pub use covectors::SignVector;
pub use enumerate::{enumerate_classes, EnumerationOptions, EnumerationReport};
pub use error::{Error, Result};
pub use polysys::{Constraint, PolySystem, Polynomial, Relation, Witness};
pub use realization::Realization;
pub use sign::Sign;
pub use symmetry::Group;
pub use tuple::RTuple;
