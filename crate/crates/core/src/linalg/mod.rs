//! Square min-plus matrices and univariate tropical polynomials evaluated at them.

mod matrix;
mod unipoly;

pub use matrix::TropMatrix;
pub use unipoly::UniPoly;
