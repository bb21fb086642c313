//! Min-plus (tropical) algebra and the cryptographic constructions built on it:
//!
//! * [`scalar`]: the semiring `Z ∪ {∞}` with `⊕ = min`, `⊗ = +`, `⊘ = -`.
//! * [`linalg`]: square min-plus matrices and univariate polynomials in them.
//! * [`kex`]: Stickel-style key exchange with polynomials in two public
//!   non-commuting matrices.
//! * [`classical`]: the same protocol over `GL_k(F_p)` and the linear-algebra
//!   attack that recovers its key.
//! * [`symbolic`]: multivariate tropical Laurent polynomials and quotients.
//! * [`aut`]: public-key encryption with birational automorphisms.
//! * [`sat`]: reduction of CNF satisfiability to tropical polynomial systems.

pub mod aut;
pub mod classical;
pub mod error;
pub mod fixtures;
pub mod kex;
pub mod linalg;
pub mod rng;
pub mod sat;
pub mod scalar;
pub mod symbolic;

pub use error::{Error, Result};
pub use linalg::{TropMatrix, UniPoly};
pub use scalar::TropScalar;
pub use symbolic::{TropMonomial, TropPoly, TropRat};
