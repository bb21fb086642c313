//! Public-key encryption with birational automorphisms of `Rat[x1..xn]`.
//!
//! The private key is a chain of factors, each either a monomial automorphism
//! `x_i ↦ b_i ⊗ ∏_j x_j^{⊗a_ij}` with a unimodular exponent matrix, or an
//! elementary triangular automorphism `x_j ↦ x_j ⊗ q(x_{j+1}, …, x_n)`.
//! The first factor in the chain is applied to a point first. The public key
//! is the composed tuple of rational functions `(α(x_1), …, α(x_n))`.
//!
//! Encryption evaluates the public key at the message. Decryption never forms
//! `α⁻¹` symbolically: it undoes the factors numerically, last one first.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kex::IntRange;
use crate::rng;
use crate::symbolic::{TropMonomial, TropPoly, TropRat, DEFAULT_MONOMIAL_CAP};

fn checked_dot(row: &[i64], v: &[i64]) -> Result<i64> {
    row.iter().zip(v).try_fold(0i64, |acc, (&a, &x)| {
        a.checked_mul(x).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)
    })
}

/// Exact integer determinant (fraction-free Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> Result<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return Ok(0) };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .zip(a[i][k].checked_mul(a[k][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::Overflow)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
}

/// Inverse of a unimodular integer matrix by integer row reduction.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut inv: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let sub_rows = |a: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| -> Result<()> {
        for j in 0..n {
            let t = a[src][j].checked_mul(f).ok_or(Error::Overflow)?;
            a[dst][j] = a[dst][j].checked_sub(t).ok_or(Error::Overflow)?;
        }
        Ok(())
    };
    for c in 0..n {
        loop {
            let Some(p) = (c..n).filter(|&r| a[r][c] != 0).min_by_key(|&r| a[r][c].unsigned_abs())
            else {
                return Err(Error::NotInvertible);
            };
            a.swap(c, p);
            inv.swap(c, p);
            let mut done = true;
            for r in c + 1..n {
                if a[r][c] != 0 {
                    let q = a[r][c] / a[c][c];
                    sub_rows(&mut a, r, c, q)?;
                    sub_rows(&mut inv, r, c, q)?;
                    done &= a[r][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        match a[c][c] {
            1 => {}
            -1 => {
                a[c].iter_mut().for_each(|v| *v = -*v);
                inv[c].iter_mut().for_each(|v| *v = -*v);
            }
            _ => return Err(Error::NotInvertible),
        }
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let f = a[r][c];
            if f != 0 {
                sub_rows(&mut a, r, c, f)?;
                sub_rows(&mut inv, r, c, f)?;
            }
        }
    }
    Ok(inv)
}

/// `x_i ↦ b_i ⊗ x_1^{⊗a_i1} ⊗ … ⊗ x_n^{⊗a_in}`; on points, `s ↦ b + A·s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialAut {
    pub b: Vec<i64>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
}

impl MonomialAut {
    pub fn new(b: Vec<i64>, a: Vec<Vec<i64>>) -> Result<Self> {
        let aut = Self { b, a };
        aut.validate()?;
        Ok(aut)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            b: vec![0; n],
            a: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.b.len();
        if let Some(row) = self.a.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        if self.a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.a.len() });
        }
        if determinant(&self.a)?.abs() != 1 {
            return Err(Error::InvalidParams("exponent matrix is not unimodular".into()));
        }
        Ok(())
    }

    /// `A` built from `ops` random elementary row operations: swaps and
    /// `row_i ± row_k`.
    pub fn random(n: usize, shift_range: IntRange, ops: usize, rng: &mut impl Rng) -> Self {
        let mut aut = Self::identity(n);
        if n >= 2 {
            for _ in 0..ops {
                let i = rng.gen_range(0..n);
                let k = (i + rng.gen_range(1..n)) % n;
                if rng.gen_bool(0.5) {
                    aut.a.swap(i, k);
                } else {
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    let src = aut.a[k].clone();
                    for (d, s) in aut.a[i].iter_mut().zip(src) {
                        *d += sign * s;
                    }
                }
            }
        }
        for b in &mut aut.b {
            *b = shift_range.sample(rng);
        }
        aut
    }

    pub fn apply_point(&self, s: &[i64]) -> Result<Vec<i64>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, &b)| checked_dot(row, s)?.checked_add(b).ok_or(Error::Overflow))
            .collect()
    }

    pub fn apply_point_inverse(&self, t: &[i64]) -> Result<Vec<i64>> {
        let inv = unimodular_inverse(&self.a)?;
        let shifted = t
            .iter()
            .zip(&self.b)
            .map(|(&t, &b)| t.checked_sub(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        inv.iter().map(|row| checked_dot(row, &shifted)).collect()
    }

    /// The images `b_i ⊗ ∏ x_j^{⊗a_ij}` as rational functions.
    pub fn images(&self) -> Vec<TropRat> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, &b)| TropRat::from_poly(TropPoly::monomial(TropMonomial::new(b, row.clone()))))
            .collect()
    }
}

/// `x_j ↦ x_j ⊗ q(x_{j+1}, …, x_n)`, other variables fixed. `j` is zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemTriangularAut {
    pub j: usize,
    pub q: TropPoly,
}

impl ElemTriangularAut {
    pub fn new(j: usize, q: TropPoly) -> Result<Self> {
        let aut = Self { j, q };
        aut.validate()?;
        Ok(aut)
    }

    pub fn dim(&self) -> usize {
        self.q.nvars()
    }

    pub fn validate(&self) -> Result<()> {
        if self.j + 1 >= self.q.nvars() {
            return Err(Error::InvalidParams(format!(
                "triangular index {} out of range for {} variables",
                self.j,
                self.q.nvars()
            )));
        }
        if self.q.terms().iter().any(|m| m.exps[..=self.j].iter().any(|&e| e != 0)) {
            return Err(Error::InvalidParams(format!(
                "q may only involve variables after index {}",
                self.j
            )));
        }
        Ok(())
    }

    /// A polynomial of degree exactly `degree` in the variables after `j`:
    /// every exponent vector of total degree at most `degree` is kept with
    /// probability `density`, the constant term and one top-degree monomial
    /// always.
    pub fn random(
        n: usize,
        j: usize,
        degree: u32,
        coeff_range: IntRange,
        density: f64,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let vectors = exponent_vectors(n, j + 1, degree);
        let top: Vec<&Vec<i64>> =
            vectors.iter().filter(|v| v.iter().sum::<i64>() == i64::from(degree)).collect();
        let forced = top[rng.gen_range(0..top.len())].clone();
        let monomials = vectors.iter().filter_map(|v| {
            let zero = v.iter().all(|&e| e == 0);
            let keep = zero || *v == forced || rng.gen_bool(density);
            keep.then(|| TropMonomial::new(coeff_range.sample(rng), v.clone()))
        });
        let q = TropPoly::new(n, monomials.collect::<Vec<_>>())?;
        Self::new(j, q)
    }

    pub fn apply_point(&self, s: &[i64]) -> Result<Vec<i64>> {
        let mut out = s.to_vec();
        out[self.j] = s[self.j].checked_add(self.q.eval(s)?).ok_or(Error::Overflow)?;
        Ok(out)
    }

    pub fn apply_point_inverse(&self, t: &[i64]) -> Result<Vec<i64>> {
        let mut out = t.to_vec();
        out[self.j] = t[self.j].checked_sub(self.q.eval(t)?).ok_or(Error::Overflow)?;
        Ok(out)
    }
}

/// All exponent vectors of length `n`, zero before `first`, total degree at
/// most `degree`.
fn exponent_vectors(n: usize, first: usize, degree: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(first, i64::from(degree), &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AutFactor {
    Monomial(MonomialAut),
    Triangular(ElemTriangularAut),
}

impl AutFactor {
    pub fn dim(&self) -> usize {
        match self {
            Self::Monomial(m) => m.dim(),
            Self::Triangular(t) => t.dim(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Monomial(m) => m.validate(),
            Self::Triangular(t) => t.validate(),
        }
    }

    pub fn apply_point(&self, s: &[i64]) -> Result<Vec<i64>> {
        match self {
            Self::Monomial(m) => m.apply_point(s),
            Self::Triangular(t) => t.apply_point(s),
        }
    }

    pub fn apply_point_inverse(&self, t: &[i64]) -> Result<Vec<i64>> {
        match self {
            Self::Monomial(m) => m.apply_point_inverse(t),
            Self::Triangular(tr) => tr.apply_point_inverse(t),
        }
    }

    /// Replaces `coords` by this factor's images of them.
    fn compose_onto(&self, coords: &[TropRat], cap: usize) -> Result<Vec<TropRat>> {
        match self {
            Self::Monomial(m) => m.images().iter().map(|img| img.substitute(coords, cap)).collect(),
            Self::Triangular(t) => {
                let shift = TropRat::from_poly(t.q.clone()).substitute(coords, cap)?;
                let mut out = coords.to_vec();
                out[t.j] = coords[t.j].otimes(&shift)?;
                let size = out[t.j].num().len().max(out[t.j].den().len());
                if size > cap {
                    return Err(Error::MonomialCap { cap, size });
                }
                Ok(out)
            }
        }
    }
}

/// The private key: factors in application order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChainRecord", into = "ChainRecord")]
pub struct AutChain {
    n: usize,
    factors: Vec<AutFactor>,
}

#[derive(Serialize, Deserialize)]
struct ChainRecord {
    n: usize,
    factors: Vec<AutFactor>,
}

impl AutChain {
    pub fn new(n: usize, factors: Vec<AutFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParams("automorphism chain is empty".into()));
        }
        for f in &factors {
            if f.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
            }
            f.validate()?;
        }
        Ok(Self { n, factors })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[AutFactor] {
        &self.factors
    }

    fn check_point(&self, s: &[i64]) -> Result<()> {
        if s.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: s.len() });
        }
        Ok(())
    }

    /// `α(s)`, factor by factor.
    pub fn apply_point(&self, s: &[i64]) -> Result<Vec<i64>> {
        self.check_point(s)?;
        self.factors.iter().try_fold(s.to_vec(), |p, f| f.apply_point(&p))
    }

    /// `α⁻¹(t)`, undoing the last factor first.
    pub fn apply_point_inverse(&self, t: &[i64]) -> Result<Vec<i64>> {
        self.check_point(t)?;
        self.factors.iter().rev().try_fold(t.to_vec(), |p, f| f.apply_point_inverse(&p))
    }

    /// Composes the chain symbolically into the tuple `(α(x_1), …, α(x_n))`.
    pub fn public_key(&self, cap: usize) -> Result<AutPublicKey> {
        let mut coords: Vec<TropRat> = (0..self.n).map(|i| TropRat::var(self.n, i)).collect();
        for f in &self.factors {
            coords = f.compose_onto(&coords, cap)?;
        }
        Ok(AutPublicKey { n: self.n, coords })
    }
}

impl TryFrom<ChainRecord> for AutChain {
    type Error = Error;

    fn try_from(r: ChainRecord) -> Result<Self> {
        Self::new(r.n, r.factors)
    }
}

impl From<AutChain> for ChainRecord {
    fn from(c: AutChain) -> Self {
        Self { n: c.n, factors: c.factors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPublicKey {
    pub n: usize,
    pub coords: Vec<TropRat>,
}

impl AutPublicKey {
    /// Coordinate-wise evaluation at `s`.
    pub fn encrypt(&self, s: &[i64]) -> Result<Vec<i64>> {
        if s.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: s.len() });
        }
        self.coords.iter().map(|c| c.eval(s)).collect()
    }

    /// `α(u)` for a polynomial message; generally a quotient.
    pub fn apply_poly(&self, u: &TropPoly, cap: usize) -> Result<TropRat> {
        TropRat::from_poly(u.clone()).substitute(&self.coords, cap)
    }

    /// Largest numerator or denominator among the coordinates.
    pub fn max_monomials(&self) -> usize {
        self.coords.iter().map(|c| c.num().len().max(c.den().len())).max().unwrap_or(0)
    }
}

pub fn decrypt(chain: &AutChain, c: &[i64]) -> Result<Vec<i64>> {
    chain.apply_point_inverse(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutParams {
    pub n: usize,
    /// Tropical degree of every triangular `q`.
    pub q_degree: u32,
    pub coeff_range: IntRange,
    /// Probability that each optional exponent vector appears in a `q`. At
    /// zero every `q` is a binomial `c0 ⊕ c ⊗ x_k ⊗ x_l`; denser `q` make the
    /// composed key grow past the monomial cap for `n ≥ 4`.
    pub q_density: f64,
    /// Range of the monomial-automorphism shifts `b_i`.
    pub shift_range: IntRange,
    /// Elementary row operations per unimodular exponent matrix.
    pub unimodular_ops: usize,
    pub seed: u64,
    pub monomial_cap: usize,
    /// Fresh samples tried when composition exceeds the cap.
    pub max_retries: u32,
}

impl AutParams {
    /// Ten variables, `α = μ1∘φ1∘μ2∘φ2∘μ3`, `deg q_j = 2`, coefficients in
    /// `[-10, 10]`.
    pub fn paper(seed: u64) -> Self {
        Self {
            n: 10,
            q_degree: 2,
            coeff_range: IntRange::new(-10, 10),
            q_density: 0.0,
            shift_range: IntRange::new(-10, 10),
            unimodular_ops: 20,
            seed,
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            max_retries: 10,
        }
    }

    pub fn toy(seed: u64) -> Self {
        Self { n: 3, unimodular_ops: 6, ..Self::paper(seed) }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams("need at least two variables".into()));
        }
        if self.q_degree == 0 {
            return Err(Error::InvalidParams("q_degree must be positive".into()));
        }
        if self.coeff_range.is_empty() || self.shift_range.is_empty() {
            return Err(Error::InvalidParams("empty coefficient range".into()));
        }
        Ok(())
    }

    /// Samples `μ1, φ1, μ2, φ2, μ3`; each `φ` is its elementary factors
    /// `τ_1, …, τ_{n-1}` in order, which makes it the triangular map
    /// `x_i ↦ x_i ⊗ q_i(x_{i+1}, …, x_n)`.
    pub fn sample_chain(&self, rng: &mut impl Rng) -> Result<AutChain> {
        self.validate()?;
        let n = self.n;
        let mut factors = Vec::new();
        for round in 0..3 {
            factors.push(AutFactor::Monomial(MonomialAut::random(
                n,
                self.shift_range,
                self.unimodular_ops,
                rng,
            )));
            if round < 2 {
                for j in 0..n - 1 {
                    factors.push(AutFactor::Triangular(ElemTriangularAut::random(
                        n,
                        j,
                        self.q_degree,
                        self.coeff_range,
                        self.q_density,
                        rng,
                    )?));
                }
            }
        }
        AutChain::new(n, factors)
    }
}

/// Samples a private chain and composes its public key, resampling when the
/// composition exceeds the monomial cap.
pub fn keygen(params: &AutParams) -> Result<(AutPublicKey, AutChain)> {
    let mut rng = rng::stream(params.seed, rng::label::AUT_KEYGEN);
    for _ in 0..params.max_retries.max(1) {
        let chain = params.sample_chain(&mut rng)?;
        match chain.public_key(params.monomial_cap) {
            Ok(pk) => return Ok((pk, chain)),
            Err(Error::MonomialCap { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::AttemptsExhausted {
        what: "composing a public key within the monomial cap",
        attempts: params.max_retries.max(1),
    })
}
