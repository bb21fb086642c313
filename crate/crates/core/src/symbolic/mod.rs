//! Multivariate tropical Laurent polynomials and their formal quotients, the
//! elements of `Rat[x1..xn]`.
//!
//! Polynomials are formal: a canonical set of monomials, one per exponent
//! vector, ordered by descending deglex. Monomials that never attain the
//! minimum are kept. Quotients are stored unreduced.

mod poly;
mod rat;

pub use poly::{TropMonomial, TropPoly};
pub use rat::TropRat;

/// Default bound on monomials produced by a single composition step.
pub const DEFAULT_MONOMIAL_CAP: usize = 100_000;
