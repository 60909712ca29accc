//! Exact computations with dual Toeplitz operators on the orthogonal
//! complement of the harmonic Bergman space, for symbols that are finite
//! sums of monomials `z^n z̄^m`.

pub mod algebra;
pub mod classifier;
pub mod cli;
pub mod engine;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod symbol;
pub mod verify;

pub use algebra::{Element, GaussianRational, Monomial, Rational};
pub use error::{Error, ParseError, Result};
