use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Eps, Finite, TropScalar};

/// An `n × n` matrix over the min-plus semiring, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<TropScalar>>", into = "Vec<Vec<TropScalar>>")]
pub struct TropMatrix {
    n: usize,
    entries: Vec<TropScalar>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParams("matrix dimension must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare);
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// Builds an all-finite matrix from integer rows.
    pub fn from_finite_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(Finite).collect())
                .collect(),
        )
    }

    /// Builds a matrix from a row-major generator.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> TropScalar) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        let entries = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Self { n, entries }
    }

    /// `0` on the diagonal, epsilon elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::scalar(Finite(0), n)
    }

    /// `λ` on the diagonal, epsilon elsewhere.
    pub fn scalar(lambda: TropScalar, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { lambda } else { Eps })
    }

    pub fn epsilon(n: usize) -> Self {
        Self::from_fn(n, |_, _| Eps)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> TropScalar {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TropScalar]> {
        self.entries.chunks(self.n)
    }

    pub fn is_all_finite(&self) -> bool {
        self.entries.iter().all(|e| e.is_finite())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.oplus(*b))
            .collect();
        Ok(Self { n: self.n, entries })
    }

    /// Min-plus product: `(i, j) ↦ min_k a_ik + b_kj`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut entries = vec![Eps; n * n];
        for i in 0..n {
            for k in 0..n {
                let Finite(a) = self.entries[i * n + k] else { continue };
                for j in 0..n {
                    if let Finite(b) = other.entries[k * n + j] {
                        let v = Finite(a.checked_add(b).ok_or(Error::Overflow)?);
                        let slot = &mut entries[i * n + j];
                        *slot = slot.oplus(v);
                    }
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// `λ ⊗ A`, which equals `(λ ⊗ I) ⊗ A`.
    pub fn scale(&self, lambda: TropScalar) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidParams("scalar multiplier must be finite".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.otimes(lambda))
            .collect::<Result<_>>()?;
        Ok(Self { n: self.n, entries })
    }

    /// `A^{⊗k}` by repeated squaring; `A^{⊗0} = I`.
    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.otimes(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.otimes(&base)?;
            }
        }
        Ok(acc)
    }

    /// Whether the matrix has a two-sided min-plus inverse, i.e. is a
    /// generalized permutation matrix: exactly one finite entry in every row
    /// and every column.
    pub fn is_invertible(&self) -> bool {
        let n = self.n;
        let mut col_counts = vec![0usize; n];
        for row in self.rows() {
            let mut finite_in_row = 0;
            for (j, e) in row.iter().enumerate() {
                if e.is_finite() {
                    finite_in_row += 1;
                    col_counts[j] += 1;
                }
            }
            if finite_in_row != 1 {
                return false;
            }
        }
        col_counts.iter().all(|&c| c == 1)
    }
}

impl TryFrom<Vec<Vec<TropScalar>>> for TropMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<TropMatrix> for Vec<Vec<TropScalar>> {
    fn from(m: TropMatrix) -> Self {
        m.rows().map(<[TropScalar]>::to_vec).collect()
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> TropMatrix {
        TropMatrix::from_finite_rows(rows).unwrap()
    }

    /// Independent min-plus product straight from the definition.
    fn naive_product(a: &TropMatrix, b: &TropMatrix) -> TropMatrix {
        let n = a.dim();
        TropMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| match (a.get(i, k), b.get(k, j)) {
                    (Finite(x), Finite(y)) => Finite(x + y),
                    _ => Eps,
                })
                .min()
                .unwrap()
        })
    }

    #[test]
    fn oplus_examples() {
        let a = m(&[&[1, 2], &[5, -1]]);
        let b = m(&[&[0, 3], &[2, 8]]);
        assert_eq!(a.oplus(&b).unwrap(), m(&[&[0, 2], &[2, -1]]));
        assert_eq!(a.oplus(&a).unwrap(), a);
        assert_eq!(a.oplus(&TropMatrix::epsilon(2)).unwrap(), a);
    }

    #[test]
    fn otimes_examples() {
        let a = m(&[&[1, 2], &[5, -1]]);
        let b = m(&[&[0, 3], &[2, 8]]);
        assert_eq!(a.otimes(&b).unwrap(), m(&[&[1, 4], &[1, 7]]));
        let id = TropMatrix::identity(2);
        assert_eq!(id.otimes(&a).unwrap(), a);
        assert_eq!(a.otimes(&id).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = TropMatrix::identity(2);
        let b = TropMatrix::identity(3);
        assert_eq!(
            a.otimes(&b),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert!(a.oplus(&b).is_err());
    }

    #[test]
    fn rejects_ragged_rows() {
        assert_eq!(
            TropMatrix::from_finite_rows(&[&[1, 2], &[3]]),
            Err(Error::NotSquare)
        );
        assert!(TropMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn scale_examples() {
        let a = m(&[&[1, 2], &[5, -1]]);
        assert_eq!(a.scale(Finite(2)).unwrap(), m(&[&[3, 4], &[7, 1]]));
        assert_eq!(
            a.scale(Finite(2)).unwrap(),
            TropMatrix::scalar(Finite(2), 2).otimes(&a).unwrap()
        );
        assert_eq!(a.scale(Finite(0)).unwrap(), a);
        let e = TropMatrix::epsilon(3);
        assert_eq!(e.scale(Finite(-4)).unwrap(), e);
        assert!(a.scale(Eps).is_err());
    }

    #[test]
    fn pow_examples() {
        let a = m(&[&[1, 2], &[5, -1]]);
        assert_eq!(a.pow(0).unwrap(), TropMatrix::identity(2));
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(naive_product(&a, &a), m(&[&[2, 1], &[4, -2]]));
        assert_eq!(a.pow(2).unwrap(), m(&[&[2, 1], &[4, -2]]));
        let mut acc = TropMatrix::identity(2);
        for k in 0..9 {
            assert_eq!(a.pow(k).unwrap(), acc);
            acc = naive_product(&acc, &a);
        }
    }

    #[test]
    fn pow_overflow_is_reported() {
        let a = m(&[&[i64::MAX / 2]]);
        assert_eq!(a.pow(3), Err(Error::Overflow));
    }

    #[test]
    fn invertibility() {
        let diag = TropMatrix::from_rows(vec![vec![Finite(3), Eps], vec![Eps, Finite(5)]]).unwrap();
        assert!(diag.is_invertible());
        let perm = TropMatrix::from_rows(vec![vec![Eps, Finite(-2)], vec![Finite(7), Eps]]).unwrap();
        assert!(perm.is_invertible());
        assert!(!m(&[&[1, 2], &[5, -1]]).is_invertible());
        assert!(!TropMatrix::epsilon(3).is_invertible());
        let same_col =
            TropMatrix::from_rows(vec![vec![Finite(0), Eps], vec![Finite(0), Eps]]).unwrap();
        assert!(!same_col.is_invertible());
    }

    #[test]
    fn json_is_array_of_arrays() {
        let a = TropMatrix::from_rows(vec![vec![Finite(1), Eps], vec![Finite(-3), Finite(0)]])
            .unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[[1,"inf"],[-3,0]]"#);
        assert_eq!(serde_json::from_str::<TropMatrix>(&s).unwrap(), a);
        assert!(serde_json::from_str::<TropMatrix>("[[1,2],[3]]").is_err());
    }
}
