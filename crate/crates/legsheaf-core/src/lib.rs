//! Exact cellular sheaf computations for Legendrian fronts.
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic is exact,
//! over the rationals or a prime field.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::result_large_err, clippy::type_complexity, clippy::wrong_self_convention, clippy::needless_range_loop)]

extern crate alloc;

pub mod barcodes;
pub mod cellsheaf;
pub mod corpus;
pub mod exactalg;
pub mod fronts;
pub mod homengine;
pub mod persistengine;
pub mod q;
pub mod reports;

pub use exactalg::{Field, PrimeField, Rationals};
pub use q::{Ext, Q};
