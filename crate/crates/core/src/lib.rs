//! Exact arithmetic for Stirling numbers of the second kind, their 2-adic
//! valuations, the Pfister generator algebra `B = Z[X_1..X_n]/(X_i^2 - 2X_i)`
//! and the scaled-monomial ideals of `Z[X]` that annihilate Witt rings.
//!
//! Everything is computed with arbitrary-precision integers; nothing in this
//! crate touches floating point.

pub mod annihilator_ideals;
pub mod cli;
pub mod error;
pub mod pfister_algebra;
pub mod polynomial;
pub mod stirling;
pub mod valuation;
pub mod witt_models;

pub use error::{Error, Result};
pub use pfister_algebra::{AlgebraElement, ExpansionCoefficients};
pub use polynomial::IntPolynomial;
