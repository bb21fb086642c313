use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `coeff ⊗ x_1^{⊗e_1} ⊗ … ⊗ x_n^{⊗e_n}`, exponents possibly negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TropMonomial {
    pub coeff: i64,
    pub exps: Vec<i64>,
}

impl TropMonomial {
    pub fn new(coeff: i64, exps: Vec<i64>) -> Self {
        Self { coeff, exps }
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn eval(&self, point: &[i64]) -> Result<i64> {
        self.exps.iter().zip(point).try_fold(self.coeff, |acc, (&e, &s)| {
            e.checked_mul(s).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)
        })
    }
}

/// Deglex: total degree first, then the exponent vector lexicographically.
fn deglex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn add_exps(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

/// A nonempty tropical Laurent polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<TropMonomial>", into = "Vec<TropMonomial>")]
pub struct TropPoly {
    nvars: usize,
    /// Descending deglex, unique exponent vectors.
    terms: Vec<TropMonomial>,
}

impl TropPoly {
    pub fn new(nvars: usize, monomials: impl IntoIterator<Item = TropMonomial>) -> Result<Self> {
        let terms: Vec<TropMonomial> = monomials.into_iter().collect();
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if let Some(bad) = terms.iter().find(|m| m.exps.len() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, found: bad.exps.len() });
        }
        Ok(Self::canonical(nvars, terms))
    }

    /// Sorts and merges; repeated exponent vectors keep the smaller coefficient.
    fn canonical(nvars: usize, mut terms: Vec<TropMonomial>) -> Self {
        terms.sort_unstable_by(|a, b| deglex(&b.exps, &a.exps).then(a.coeff.cmp(&b.coeff)));
        terms.dedup_by(|later, earlier| later.exps == earlier.exps);
        Self { nvars, terms }
    }

    fn from_map(nvars: usize, map: HashMap<Vec<i64>, i64>) -> Self {
        let mut terms: Vec<TropMonomial> =
            map.into_iter().map(|(exps, coeff)| TropMonomial { coeff, exps }).collect();
        terms.sort_unstable_by(|a, b| deglex(&b.exps, &a.exps));
        Self { nvars, terms }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self { nvars, terms: vec![TropMonomial::new(c, vec![0; nvars])] }
    }

    /// `coeff ⊗ x_i`.
    pub fn var(nvars: usize, i: usize, coeff: i64) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self { nvars, terms: vec![TropMonomial::new(coeff, exps)] }
    }

    pub fn monomial(m: TropMonomial) -> Self {
        Self { nvars: m.exps.len(), terms: vec![m] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[TropMonomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_monomial(&self) -> Option<&TropMonomial> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn is_constant_zero(&self) -> bool {
        self.as_monomial()
            .is_some_and(|m| m.coeff == 0 && m.exps.iter().all(|&e| e == 0))
    }

    /// Highest total degree among the monomials.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(TropMonomial::degree).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Union of the monomial sets.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match deglex(&b[j].exps, &a[i].exps) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(TropMonomial::new(a[i].coeff.min(b[j].coeff), a[i].exps.clone()));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Self { nvars: self.nvars, terms: out })
    }

    pub fn otimes(&self, other: &Self) -> Result<Self> {
        self.otimes_capped(other, usize::MAX)
    }

    /// All pairwise products, failing once more than `cap` distinct monomials
    /// appear.
    pub fn otimes_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        self.check_vars(other)?;
        if let Some(m) = other.as_monomial() {
            return self.times_monomial(m);
        }
        if let Some(m) = self.as_monomial() {
            return other.times_monomial(m);
        }
        let mut map: HashMap<Vec<i64>, i64> = HashMap::with_capacity(self.len().max(other.len()));
        for a in &self.terms {
            for b in &other.terms {
                let exps = add_exps(&a.exps, &b.exps)?;
                let coeff = a.coeff.checked_add(b.coeff).ok_or(Error::Overflow)?;
                let slot = map.entry(exps).or_insert(coeff);
                *slot = (*slot).min(coeff);
            }
            if map.len() > cap {
                return Err(Error::MonomialCap { cap, size: map.len() });
            }
        }
        Ok(Self::from_map(self.nvars, map))
    }

    /// Multiplying by a monomial is a shift, which preserves deglex order.
    fn times_monomial(&self, m: &TropMonomial) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(TropMonomial::new(
                    t.coeff.checked_add(m.coeff).ok_or(Error::Overflow)?,
                    add_exps(&t.exps, &m.exps)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nvars: self.nvars, terms })
    }

    /// `self^{⊗k}` for `k ≥ 0`; `p^{⊗0}` is the constant 0.
    pub fn pow_capped(&self, mut k: u32, cap: usize) -> Result<Self> {
        let mut acc = Self::constant(self.nvars, 0);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.otimes_capped(&base, cap)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.otimes_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a single monomial: negated coefficient and exponents.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let m = self.as_monomial()?;
        let coeff = m.coeff.checked_neg()?;
        let exps = m.exps.iter().map(|e| e.checked_neg()).collect::<Option<Vec<_>>>()?;
        Some(Self::monomial(TropMonomial::new(coeff, exps)))
    }

    /// `min` over monomials of `coeff + ⟨exps, point⟩`.
    pub fn eval(&self, point: &[i64]) -> Result<i64> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        let mut best = i64::MAX;
        for m in &self.terms {
            best = best.min(m.eval(point)?);
        }
        Ok(best)
    }

    /// Renders with caller-supplied variable names, e.g.
    /// `5 (x) x1 (x) x2 (+) x1^2 (+) 17`.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|m| {
                let mut factors = Vec::new();
                if m.coeff != 0 || m.exps.iter().all(|&e| e == 0) {
                    factors.push(m.coeff.to_string());
                }
                for (i, &e) in m.exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(name(i)),
                        _ => factors.push(format!("{}^{}", name(i), e)),
                    }
                }
                factors.join(" (x) ")
            })
            .collect();
        parts.join(" (+) ")
    }
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|i| format!("x{}", i + 1)))
    }
}

impl TryFrom<Vec<TropMonomial>> for TropPoly {
    type Error = Error;

    fn try_from(terms: Vec<TropMonomial>) -> Result<Self> {
        let nvars = terms.first().ok_or(Error::EmptyPolynomial)?.exps.len();
        Self::new(nvars, terms)
    }
}

impl From<TropPoly> for Vec<TropMonomial> {
    fn from(p: TropPoly) -> Self {
        p.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(coeff: i64, exps: &[i64]) -> TropMonomial {
        TropMonomial::new(coeff, exps.to_vec())
    }

    fn poly(terms: &[(i64, &[i64])]) -> TropPoly {
        let n = terms[0].1.len();
        TropPoly::new(n, terms.iter().map(|(c, e)| mono(*c, e))).unwrap()
    }

    /// `5⊗x⊗y⊗z ⊕ x⊗x ⊕ 2⊗z ⊕ 17`
    fn example_one() -> TropPoly {
        poly(&[(5, &[1, 1, 1]), (0, &[2, 0, 0]), (2, &[0, 0, 1]), (17, &[0, 0, 0])])
    }

    #[test]
    fn example_one_degrees() {
        assert_eq!(example_one().degree(), 3);
        assert_eq!(mono(0, &[2, 1, 2]).degree(), 5);
        assert_eq!(TropPoly::constant(3, 9).degree(), 0);
    }

    #[test]
    fn example_one_is_stored_in_deglex_order() {
        let shuffled =
            poly(&[(17, &[0, 0, 0]), (2, &[0, 0, 1]), (5, &[1, 1, 1]), (0, &[2, 0, 0])]);
        assert_eq!(shuffled, example_one());
        assert_eq!(shuffled.to_string(), "5 (x) x1 (x) x2 (x) x3 (+) x1^2 (+) 2 (x) x3 (+) 17");
    }

    #[test]
    fn eval_examples() {
        // min(5, 0, 2, 17)
        assert_eq!(example_one().eval(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(example_one().eval(&[1, -2, 3]).unwrap(), 2);
        assert_eq!(TropPoly::constant(2, 17).eval(&[4, -8]).unwrap(), 17);
        assert_eq!(TropPoly::var(3, 0, 0).eval(&[9, 1, 1]).unwrap(), 9);
        assert!(example_one().eval(&[0, 0]).is_err());
        assert_eq!(TropPoly::var(1, 0, 1).eval(&[i64::MAX]), Err(Error::Overflow));
    }

    #[test]
    fn oplus_examples() {
        let a = TropPoly::var(2, 0, 2);
        let b = TropPoly::var(2, 0, 5);
        assert_eq!(a.oplus(&b).unwrap(), a);
        assert_eq!(example_one().oplus(&example_one()).unwrap(), example_one());
        let sum = TropPoly::var(2, 0, 0).oplus(&TropPoly::var(2, 1, 0)).unwrap();
        assert_eq!(sum.len(), 2);
        assert!(a.oplus(&TropPoly::var(3, 0, 0)).is_err());
    }

    #[test]
    fn otimes_examples() {
        let p = example_one();
        assert_eq!(p.otimes(&TropPoly::constant(3, 0)).unwrap(), p);
        let prod = TropPoly::var(2, 0, 1).otimes(&TropPoly::var(2, 1, 2)).unwrap();
        assert_eq!(prod, poly(&[(3, &[1, 1])]));
        let x1 = TropPoly::var(2, 0, 0);
        let lhs = x1.oplus(&TropPoly::var(2, 1, 0)).unwrap().otimes(&x1).unwrap();
        assert_eq!(lhs, poly(&[(0, &[2, 0]), (0, &[1, 1])]));
    }

    #[test]
    fn otimes_merges_to_min() {
        // (x ⊕ 1)(x ⊕ 1) has two routes to x: 0+1 from each side.
        let p = poly(&[(0, &[1]), (1, &[0])]);
        let sq = p.otimes(&p).unwrap();
        assert_eq!(sq, poly(&[(0, &[2]), (1, &[1]), (2, &[0])]));
        assert_eq!(p.pow_capped(2, 100).unwrap(), sq);
        assert_eq!(p.pow_capped(0, 100).unwrap(), TropPoly::constant(1, 0));
    }

    #[test]
    fn cap_is_enforced() {
        let p = poly(&[(0, &[1, 0]), (0, &[0, 1]), (0, &[0, 0])]);
        assert!(matches!(p.pow_capped(6, 10), Err(Error::MonomialCap { cap: 10, .. })));
        assert!(p.pow_capped(6, 1000).is_ok());
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert_eq!(TropPoly::new(2, []), Err(Error::EmptyPolynomial));
        assert!(TropPoly::new(2, [mono(0, &[1])]).is_err());
    }

    #[test]
    fn json_records() {
        let p = poly(&[(3, &[1, -1]), (0, &[0, 0])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"coeff":3,"exps":[1,-1]},{"coeff":0,"exps":[0,0]}]"#);
        assert_eq!(serde_json::from_str::<TropPoly>(&s).unwrap(), p);
        assert!(serde_json::from_str::<TropPoly>("[]").is_err());
    }
}
