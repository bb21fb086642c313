use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::TropMatrix;
use crate::scalar::Finite;

/// A univariate tropical polynomial `⊕_d c_d ⊗ x^{⊗d}` kept as a formal set of
/// `(degree, coefficient)` pairs sorted by degree. Dominated terms are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<UniTerm>", into = "Vec<UniTerm>")]
pub struct UniPoly {
    terms: Vec<(u32, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct UniTerm {
    degree: u32,
    coefficient: i64,
}

impl UniPoly {
    /// Canonicalizes the pairs; repeated degrees keep the smaller coefficient.
    pub fn new(pairs: impl IntoIterator<Item = (u32, i64)>) -> Result<Self> {
        let mut terms: Vec<(u32, i64)> = pairs.into_iter().collect();
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        terms.sort_unstable();
        terms.dedup_by_key(|t| t.0);
        Ok(Self { terms })
    }

    pub fn monomial(degree: u32, coefficient: i64) -> Self {
        Self { terms: vec![(degree, coefficient)] }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.0)
    }

    /// `p(A) = ⊕ c ⊗ A^{⊗d}`; the constant term contributes `c ⊗ I`.
    pub fn eval_matrix(&self, a: &TropMatrix) -> Result<TropMatrix> {
        let mut power = TropMatrix::identity(a.dim());
        let mut power_deg = 0;
        let mut acc: Option<TropMatrix> = None;
        for &(d, c) in &self.terms {
            while power_deg < d {
                power = power.otimes(a)?;
                power_deg += 1;
            }
            let term = power.scale(Finite(c))?;
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.oplus(&term)?,
            });
        }
        Ok(acc.expect("polynomial is nonempty"))
    }
}

impl TryFrom<Vec<UniTerm>> for UniPoly {
    type Error = Error;

    fn try_from(terms: Vec<UniTerm>) -> Result<Self> {
        Self::new(terms.into_iter().map(|t| (t.degree, t.coefficient)))
    }
}

impl From<UniPoly> for Vec<UniTerm> {
    fn from(p: UniPoly) -> Self {
        p.terms
            .into_iter()
            .map(|(degree, coefficient)| UniTerm { degree, coefficient })
            .collect()
    }
}
