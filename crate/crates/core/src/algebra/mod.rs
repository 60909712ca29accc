//! Gaussian rationals, monomial-sum elements of `L²(𝔻)`, and the projections
//! `P`, `Q`, `I - Q`.

pub mod element;
pub mod gauss;
pub mod projection;

pub use element::{conjugate, inner_product, monomial_inner, multiply, Element, Monomial};
pub use gauss::{format_rational, int, ratio, GaussianRational, Rational};
pub use projection::{bergman_project, complement_project, harmonic_constant, harmonic_project};
