//! Matroid divisors on Levi graphs, chip-firing rank, realizability of
//! rank-3 matroids over finite fields and the rationals, and a compiler
//! from presented ℤ-algebras to rank-3 matroids.

pub mod chip_firing;
pub mod cli;
pub mod error;
pub mod field;
pub mod matroid;
pub mod matroid_divisor;
pub mod mnev;
pub mod monic_slp;
pub mod projective;

pub use error::{Error, Result};
