//! Commutative polar complex numbers in five dimensions.
//!
//! A 5-complex number is `x0 + h1 x1 + h2 x2 + h3 x3 + h4 x4` with the cyclic
//! basis rule `h_j h_k = h_{(j+k) mod 5}`. The crate provides ring arithmetic,
//! the canonical decomposition into a real line and two complex planes, polar
//! and exponential forms, the five polar cosexponential functions, elementary
//! functions, power series and analyticity checks, contour integrals with
//! residues, and factorization of polynomials.

pub mod algebra;
pub mod analytic;
pub mod canonical;
pub mod cli;
pub mod contour;
pub mod cosexp;
pub mod elementary;
pub mod error;
pub mod format;
pub mod functions;
pub mod geometry;
pub mod polyfactor;
pub mod verify;

pub use algebra::{basis_product, PentaComplex, RingMatrix};
pub use canonical::CanonicalForm;
pub use error::{Error, Result};
