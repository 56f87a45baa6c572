//! Exact combinatorics of regular buildings, computed inside the Coxeter
//! group and its Hecke algebra: generalised sphere cardinalities, pointed
//! pregallery enumeration, parabolic structure constants, and isotropic
//! random walks, all as exact polynomials in the building parameters.

pub mod algnum;
pub mod cosets;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod pregallery;
pub mod qpoly;
pub mod randwalk;
pub mod spheres;
pub mod suites;

pub use algnum::{AlgNum, NumberField, Rat};
pub use coxeter::{build_system, AnySystem, CoxeterMatrix, CoxeterSystem, GenSubset, GroupElement, Scalar};
pub use error::{Error, Result};
pub use qpoly::{ParamAssignment, ParamValue, QPoly};
