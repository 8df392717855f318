//! Exact linear algebra over the rationals and prime fields, bounded cochain
//! complexes, chain maps, cones and total complexes.

mod complex;
mod field;
mod matrix;
mod sparse;

pub use complex::*;
pub use field::{is_prime, Field, PrimeField, Rationals};
pub use matrix::Matrix;
pub use sparse::Sparse;
