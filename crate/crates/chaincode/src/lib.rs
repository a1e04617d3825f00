//! Exact computer algebra for polycyclic codes over finite chain rings.
//!
//! The crate builds Galois rings GR(p^a, m) and their polynomial algebras,
//! constructs free and non-free polycyclic codes, computes Euclidean and
//! annihilator duals, strong Gröbner bases, Galois images, trace and
//! restriction codes, and ships a brute-force oracle layer that verifies the
//! structural claims exhaustively at desk scale.

pub mod chainring;
pub mod lincode;
pub mod polycyclic;
pub mod polyring;
pub mod error;

pub use chainring::{Elem, GaloisContext, Ring};
pub use error::{Error, Result};
