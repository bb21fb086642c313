//! Stickel-style key exchange over min-plus matrices.
//!
//! Public: two non-commuting matrices `A`, `B`. Each party holds two
//! univariate polynomials `(p1, p2)` and publishes `p1(A) ⊗ p2(B)`. Since
//! polynomials in the same matrix commute, both parties arrive at
//! `p1(A) ⊗ q1(A) ⊗ q2(B) ⊗ p2(B)`.
//!
//! Stickel's original exponent protocol is the special case where each
//! private polynomial is a single monomial `x^{⊗k}` with coefficient 0
//! (see [`KexPrivate::stickel`]).

use std::ops::RangeInclusive;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{TropMatrix, UniPoly};
use crate::rng::{self, TropRng};
use crate::scalar::Finite;

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Number of integers in the interval.
    pub fn len(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            (i128::from(self.hi) - i128::from(self.lo) + 1) as u128
        }
    }

    pub fn as_range(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn sample(&self, rng: &mut impl Rng) -> i64 {
        rng.gen_range(self.as_range())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KexParams {
    pub n: usize,
    pub entry_range: IntRange,
    pub degree_range: IntRange,
    pub coeff_range: IntRange,
    pub seed: u64,
    /// How many times setup may resample a commuting pair before giving up.
    pub max_attempts: u32,
}

impl KexParams {
    /// `n = 10`, entries in `[-10^10, 10^10]`, degrees in `[1, 10]`,
    /// coefficients in `[-1000, 1000]`.
    pub fn paper(seed: u64) -> Self {
        Self {
            n: 10,
            entry_range: IntRange::new(-10_000_000_000, 10_000_000_000),
            degree_range: IntRange::new(1, 10),
            coeff_range: IntRange::new(-1000, 1000),
            seed,
            max_attempts: 100,
        }
    }

    /// Small instance for quick tests and demos.
    pub fn toy(seed: u64) -> Self {
        Self {
            n: 2,
            entry_range: IntRange::new(-10, 10),
            degree_range: IntRange::new(1, 3),
            coeff_range: IntRange::new(-5, 5),
            seed,
            max_attempts: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        for (name, r) in [
            ("entry_range", self.entry_range),
            ("degree_range", self.degree_range),
            ("coeff_range", self.coeff_range),
        ] {
            if r.is_empty() {
                return Err(Error::InvalidParams(format!("{name} is empty")));
            }
        }
        if self.degree_range.lo < 1 || self.degree_range.hi > i64::from(u32::MAX) {
            return Err(Error::InvalidParams("degree_range must lie in [1, u32::MAX]".into()));
        }
        Ok(())
    }

    /// `log10` of the number of private polynomial pairs `(p1, p2)`.
    ///
    /// A private polynomial of degree `d` is dense: each of the `d + 1`
    /// degrees carries a coefficient from `coeff_range`, so there are
    /// `Σ_d |coeff_range|^{d+1}` polynomials and that count squared pairs.
    pub fn key_space_log10(&self) -> f64 {
        let c = (self.coeff_range.len() as f64).log10();
        let logs: Vec<f64> = (self.degree_range.lo..=self.degree_range.hi)
            .map(|d| (d + 1) as f64 * c)
            .collect();
        let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let single = max + logs.iter().map(|l| 10f64.powf(l - max)).sum::<f64>().log10();
        2.0 * single
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KexPublic {
    pub a: TropMatrix,
    pub b: TropMatrix,
}

impl KexPublic {
    pub fn new(a: TropMatrix, b: TropMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        if a.otimes(&b)? == b.otimes(&a)? {
            return Err(Error::InvalidParams("public matrices commute".into()));
        }
        Ok(Self { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// One party's secret polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KexPrivate {
    pub p1: UniPoly,
    pub p2: UniPoly,
}

impl KexPrivate {
    /// Dense polynomials of uniformly drawn degree: every degree from 0 up to
    /// the drawn one receives a uniform coefficient.
    pub fn random(params: &KexParams, rng: &mut impl Rng) -> Result<Self> {
        params.validate()?;
        let mut draw = || {
            let degree = params.degree_range.sample(rng) as u32;
            UniPoly::new((0..=degree).map(|d| (d, params.coeff_range.sample(rng))))
        };
        Ok(Self { p1: draw()?, p2: draw()? })
    }

    /// `p1 = x^{⊗n}`, `p2 = x^{⊗m}`: the exponent-only protocol.
    pub fn stickel(n: u32, m: u32) -> Self {
        Self { p1: UniPoly::monomial(n, 0), p2: UniPoly::monomial(m, 0) }
    }
}

/// Samples `A`, `B` entrywise uniformly, resampling while they commute.
pub fn setup(params: &KexParams) -> Result<KexPublic> {
    params.validate()?;
    if params.n == 1 {
        return Err(Error::InvalidParams("1x1 matrices always commute".into()));
    }
    let mut rng = rng::stream(params.seed, rng::label::KEX_PUBLIC);
    let n = params.n;
    let sample = |rng: &mut TropRng| {
        TropMatrix::from_fn(n, |_, _| Finite(params.entry_range.sample(rng)))
    };
    for _ in 0..params.max_attempts {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        if a.otimes(&b)? != b.otimes(&a)? {
            return Ok(KexPublic { a, b });
        }
    }
    Err(Error::AttemptsExhausted {
        what: "sampling non-commuting public matrices",
        attempts: params.max_attempts,
    })
}

/// The value a party sends: `p1(A) ⊗ p2(B)`.
pub fn offer(public: &KexPublic, private: &KexPrivate) -> Result<TropMatrix> {
    private
        .p1
        .eval_matrix(&public.a)?
        .otimes(&private.p2.eval_matrix(&public.b)?)
}

/// The shared key: `p1(A) ⊗ received ⊗ p2(B)`.
pub fn finish(public: &KexPublic, private: &KexPrivate, received: &TropMatrix) -> Result<TropMatrix> {
    if received.dim() != public.dim() {
        return Err(Error::DimensionMismatch { expected: public.dim(), found: received.dim() });
    }
    private
        .p1
        .eval_matrix(&public.a)?
        .otimes(received)?
        .otimes(&private.p2.eval_matrix(&public.b)?)
}

/// Full record of one simulated exchange.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub params: KexParams,
    pub public: KexPublic,
    pub alice: KexPrivate,
    pub bob: KexPrivate,
    pub alice_offer: TropMatrix,
    pub bob_offer: TropMatrix,
    pub alice_key: TropMatrix,
    pub bob_key: TropMatrix,
    pub agreement: bool,
}

pub fn run_demo(params: &KexParams) -> Result<Transcript> {
    let public = setup(params)?;
    let alice = KexPrivate::random(params, &mut rng::stream(params.seed, rng::label::KEX_ALICE))?;
    let bob = KexPrivate::random(params, &mut rng::stream(params.seed, rng::label::KEX_BOB))?;
    let alice_offer = offer(&public, &alice)?;
    let bob_offer = offer(&public, &bob)?;
    let alice_key = finish(&public, &alice, &bob_offer)?;
    let bob_key = finish(&public, &bob, &alice_offer)?;
    let agreement = alice_key == bob_key;
    Ok(Transcript {
        params: params.clone(),
        public,
        alice,
        bob,
        alice_offer,
        bob_offer,
        alice_key,
        bob_key,
        agreement,
    })
}
