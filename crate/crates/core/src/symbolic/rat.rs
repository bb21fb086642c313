use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{TropMonomial, TropPoly};
use crate::error::{Error, Result};

/// A formal quotient `num ⊘ den` of tropical polynomials.
///
/// A single-monomial denominator is a unit among Laurent polynomials, so it is
/// always folded into the numerator. Other common factors are not cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatRecord", into = "RatRecord")]
pub struct TropRat {
    num: TropPoly,
    den: TropPoly,
}

#[derive(Serialize, Deserialize)]
struct RatRecord {
    num: TropPoly,
    den: TropPoly,
}

impl TropRat {
    pub fn new(num: TropPoly, den: TropPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::DimensionMismatch { expected: num.nvars(), found: den.nvars() });
        }
        if den.is_constant_zero() {
            return Ok(Self { num, den });
        }
        if let Some(inv) = den.monomial_inverse() {
            let num = num.otimes(&inv)?;
            return Ok(Self { den: TropPoly::constant(num.nvars(), 0), num });
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: TropPoly) -> Self {
        let den = TropPoly::constant(p.nvars(), 0);
        Self { num: p, den }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(TropPoly::var(nvars, i, 0))
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_poly(TropPoly::constant(nvars, c))
    }

    pub fn num(&self) -> &TropPoly {
        &self.num
    }

    pub fn den(&self) -> &TropPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Total number of stored monomials.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    /// `(x⊘y) ⊗ (z⊘t) = (x⊗z) ⊘ (y⊗t)`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.otimes(&other.num)?, self.den.otimes(&other.den)?)
    }

    /// `(x⊘y) ⊕ (z⊘t) = ((x⊗t) ⊕ (y⊗z)) ⊘ (y⊗t)`. When the denominators are
    /// formally equal this is taken as `(x ⊕ z) ⊘ y`, an equivalent quotient.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.oplus(&other.num)?, self.den.clone());
        }
        let num = self
            .num
            .otimes(&other.den)?
            .oplus(&self.den.otimes(&other.num)?)?;
        Self::new(num, self.den.otimes(&other.den)?)
    }

    /// `den ⊘ num`.
    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `x⊘y ~ z⊘t` iff `x⊗t` and `y⊗z` are formally identical.
    pub fn equiv(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        match (self.num.otimes(&other.den), self.den.otimes(&other.num)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// `num(s) - den(s)`.
    pub fn eval(&self, point: &[i64]) -> Result<i64> {
        self.num
            .eval(point)?
            .checked_sub(self.den.eval(point)?)
            .ok_or(Error::Overflow)
    }

    /// Substitutes `args[i]` for `x_i`.
    ///
    /// Every monomial `c ⊗ ∏ x_i^{a_i}` becomes `c ⊗ ∏ args_i^{a_i}`, with
    /// negative exponents swapping numerator and denominator. The monomial
    /// images are summed over the common denominator
    /// `L = ∏ den_i^{P_i} ⊗ num_i^{N_i}`, where `P_i` / `N_i` are the largest
    /// positive / negative exponents of `x_i`. The result is equivalent to
    /// summing the images pairwise with `⊕`, without the repeated
    /// denominators that produces.
    pub fn substitute(&self, args: &[TropRat], cap: usize) -> Result<Self> {
        let n = self.nvars();
        if args.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: args.len() });
        }
        let out_vars = args.first().map_or(n, TropRat::nvars);
        if let Some(bad) = args.iter().find(|a| a.nvars() != out_vars) {
            return Err(Error::DimensionMismatch { expected: out_vars, found: bad.nvars() });
        }
        let num = substitute_poly(&self.num, args, out_vars, cap)?;
        let den = substitute_poly(&self.den, args, out_vars, cap)?;
        // (a⊘b) ⊘ (c⊘d) = (a⊗d) ⊘ (b⊗c)
        let result = Self::new(
            num.num.otimes_capped(&den.den, cap)?,
            num.den.otimes_capped(&den.num, cap)?,
        )?;
        check_cap(&result, cap)?;
        Ok(result)
    }
}

fn check_cap(r: &TropRat, cap: usize) -> Result<()> {
    let size = r.num.len().max(r.den.len());
    if size > cap {
        return Err(Error::MonomialCap { cap, size });
    }
    Ok(())
}

/// Memoized `num_i^e` / `den_i^e`.
struct Powers<'a> {
    args: &'a [TropRat],
    cap: usize,
    cache: HashMap<(usize, bool, u32), TropPoly>,
}

impl Powers<'_> {
    fn get(&mut self, i: usize, numerator: bool, e: u32) -> Result<TropPoly> {
        if let Some(p) = self.cache.get(&(i, numerator, e)) {
            return Ok(p.clone());
        }
        let base = if numerator { &self.args[i].num } else { &self.args[i].den };
        let p = base.pow_capped(e, self.cap)?;
        self.cache.insert((i, numerator, e), p.clone());
        Ok(p)
    }
}

fn exponent(e: i64) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::Overflow)
}

fn substitute_poly(p: &TropPoly, args: &[TropRat], out_vars: usize, cap: usize) -> Result<TropRat> {
    let n = p.nvars();
    let mut max_pos = vec![0i64; n];
    let mut max_neg = vec![0i64; n];
    for m in p.terms() {
        for (i, &e) in m.exps.iter().enumerate() {
            max_pos[i] = max_pos[i].max(e);
            max_neg[i] = max_neg[i].max(-e);
        }
    }

    let mut powers = Powers { args, cap, cache: HashMap::new() };
    let one = TropPoly::constant(out_vars, 0);

    let mut den = one.clone();
    for i in 0..n {
        if !args[i].den.is_constant_zero() && max_pos[i] > 0 {
            den = den.otimes_capped(&powers.get(i, false, exponent(max_pos[i])?)?, cap)?;
        }
        if max_neg[i] > 0 {
            den = den.otimes_capped(&powers.get(i, true, exponent(max_neg[i])?)?, cap)?;
        }
    }

    let mut num: Option<TropPoly> = None;
    for m in p.terms() {
        let mut term = TropPoly::monomial(TropMonomial::new(m.coeff, vec![0; out_vars]));
        for (i, &e) in m.exps.iter().enumerate() {
            let trivial_den = args[i].den.is_constant_zero();
            let (pos, neg) = (e.max(0), (-e).max(0));
            // Numerator factors: num_i^{pos} den_i^{P_i - pos} den_i^{neg} num_i^{N_i - neg}.
            let num_exp = pos + (max_neg[i] - neg);
            let den_exp = if trivial_den { 0 } else { (max_pos[i] - pos) + neg };
            if num_exp > 0 {
                term = term.otimes_capped(&powers.get(i, true, exponent(num_exp)?)?, cap)?;
            }
            if den_exp > 0 {
                term = term.otimes_capped(&powers.get(i, false, exponent(den_exp)?)?, cap)?;
            }
        }
        num = Some(match num {
            None => term,
            Some(acc) => {
                let s = acc.oplus(&term)?;
                if s.len() > cap {
                    return Err(Error::MonomialCap { cap, size: s.len() });
                }
                s
            }
        });
    }
    TropRat::new(num.expect("polynomial is nonempty"), den)
}

impl fmt::Display for TropRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant_zero() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) (/) ({})", self.num, self.den)
        }
    }
}

impl TryFrom<RatRecord> for TropRat {
    type Error = Error;

    fn try_from(r: RatRecord) -> Result<Self> {
        if r.num.nvars() != r.den.nvars() {
            return Err(Error::DimensionMismatch { expected: r.num.nvars(), found: r.den.nvars() });
        }
        Ok(Self { num: r.num, den: r.den })
    }
}

impl From<TropRat> for RatRecord {
    fn from(r: TropRat) -> Self {
        Self { num: r.num, den: r.den }
    }
}
