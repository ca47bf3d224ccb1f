//! Exact algebra behind the polynomial representation of the quantum affine
//! algebra of `gl(n)`.
//!
//! Everything here is exact: coefficients live in `Q(q)` ([`QRat`]), polynomials
//! are Laurent polynomials in `x_1..x_d` over that field, and all identities are
//! checked by equality rather than tolerance. The crate is `no_std` with `alloc`.
//!
//! Indices in the Rust API are 0-based throughout. Variable `x_1` of the
//! mathematical notation is index `0`, generator `E_1` is `i = 0`, and so on.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod convolution;
pub mod drinfeld;
pub mod error;
pub mod flagcomb;
pub mod laurent;
pub mod parse;
pub mod perm;
pub mod polyrep;
pub mod qcoeff;
pub mod symmetrize;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Monomial, StructuredFraction};
pub use qcoeff::QRat;
