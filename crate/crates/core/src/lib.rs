//! Exact operator calculus for the equivariant Chern character operators on
//! the Fock space of the Hilbert schemes of points on the plane.

pub mod chern;
pub mod coeff;
pub mod derivatives;
pub mod error;
pub mod fock;
pub mod partitions;
pub mod qzeta;
pub mod report;
pub mod suites;
pub mod symfunc;
pub mod traces;
pub mod vertex;

pub use error::{Error, Result};
