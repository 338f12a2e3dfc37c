//! Weighted surface algebras of triangulation quivers.
//!
//! The crate builds the algebras attached to a triangulation quiver with
//! weights and parameters as explicit finite-dimensional algebras, and checks
//! their periodicity and growth properties by exact linear algebra.

pub mod algebra;
pub mod bimodule;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod modules;
pub mod quiver;
pub mod reptype;
pub mod surface;

pub use error::{Result, SawError};
pub use field::{Field, PrimeField, Rationals};
