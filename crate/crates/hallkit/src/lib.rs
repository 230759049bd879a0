//! Exact computations in Ringel-Hall algebras of acyclic quivers over small
//! finite fields, and in the reduced Drinfeld double built from two signed
//! copies glued over a common torus.
//!
//! Everything is exact: scalars live in Q(v) with v^2 = q, structure constants
//! are counted (or derived from counts) over F_q, and every identity check
//! reduces to equality of canonical normal forms.

pub mod dbl;
pub mod error;
pub mod fq;
pub mod hallalg;
pub mod mutation;
pub mod qcoeff;
pub mod quiver;
pub mod repcat;
pub mod verify;

pub use error::HallError;
pub use qcoeff::Coeff;
pub use quiver::{DimVec, KClass, Quiver};
pub use repcat::{Caps, Catalog, ClassId, Representation};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, HallError>;
