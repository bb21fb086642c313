use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fp::{self, FpMatrix, LinearSystem};
use crate::error::{Error, Result};
use crate::rng;

const EXPONENT_RANGE: std::ops::RangeInclusive<u64> = 1..=1000;
const SETUP_ATTEMPTS: u32 = 100;
/// Random combinations of the solution basis tried while looking for an
/// invertible `x`.
pub const DEFAULT_COMBINATIONS: u32 = 50;

/// One honest run of the exponent protocol: `u = a^n b^m`, `v = a^r b^s`,
/// `K = a^{n+r} b^{m+s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalInstance {
    pub a: FpMatrix,
    pub b: FpMatrix,
    pub n: u64,
    pub m: u64,
    pub r: u64,
    pub s: u64,
    pub u: FpMatrix,
    pub v: FpMatrix,
    pub key: FpMatrix,
}

pub fn run(k: usize, p: u64, seed: u64) -> Result<ClassicalInstance> {
    if k < 2 {
        return Err(Error::InvalidParams("k must be at least 2; scalars commute".into()));
    }
    fp::check_modulus(p)?;
    let mut rng = rng::stream(seed, rng::label::CLASSICAL_SETUP);
    let (a, b) = (0..SETUP_ATTEMPTS)
        .find_map(|_| {
            let a = FpMatrix::random(k, p, &mut rng);
            let b = FpMatrix::random(k, p, &mut rng);
            (a.is_invertible() && b.is_invertible() && a.mul(&b) != b.mul(&a)).then_some((a, b))
        })
        .ok_or(Error::AttemptsExhausted {
            what: "sampling invertible non-commuting matrices",
            attempts: SETUP_ATTEMPTS,
        })?;
    let [n, m, r, s] = [(); 4].map(|_| rng.gen_range(EXPONENT_RANGE));
    let u = a.pow(n).mul(&b.pow(m));
    let v = a.pow(r).mul(&b.pow(s));
    let key_a = a.pow(n).mul(&v).mul(&b.pow(m));
    let key_b = a.pow(r).mul(&u).mul(&b.pow(s));
    assert_eq!(key_a, key_b, "honest parties must agree");
    Ok(ClassicalInstance { a, b, n, m, r, s, u, v, key: key_a })
}

/// Recovers the shared key from public data alone.
///
/// Finds `x`, `y` with `xa = ax`, `yb = by`, `xu = y` (a homogeneous system
/// of `3k²` equations in `2k²` unknowns), picks a solution with `x`
/// invertible, and returns `x⁻¹ v y`. Any such pair works:
/// `x⁻¹ a^r b^s y = a^r x⁻¹ y b^s = a^r u b^s = K`.
pub fn attack(
    a: &FpMatrix,
    b: &FpMatrix,
    u: &FpMatrix,
    v: &FpMatrix,
    combinations: u32,
    rng: &mut impl Rng,
) -> Result<FpMatrix> {
    let (k, p) = (a.dim(), a.modulus());
    for other in [b, u, v] {
        if other.dim() != k || other.modulus() != p {
            return Err(Error::DimensionMismatch { expected: k, found: other.dim() });
        }
    }
    if a.mul(b) == b.mul(a) {
        return Err(Error::InvalidParams("public matrices commute".into()));
    }

    let kk = k * k;
    let x = |i: usize, j: usize| i * k + j;
    let y = |i: usize, j: usize| kk + i * k + j;
    let neg = |c: u64| (p - c) % p;
    let mut rows = Vec::with_capacity(3 * kk);
    for i in 0..k {
        for j in 0..k {
            // (xa - ax)_ij = Σ_l x_il a_lj - a_il x_lj
            let mut row = vec![0u64; 2 * kk];
            for l in 0..k {
                row[x(i, l)] = (row[x(i, l)] + a.get(l, j)) % p;
                row[x(l, j)] = (row[x(l, j)] + neg(a.get(i, l))) % p;
            }
            rows.push(row);
            // (yb - by)_ij
            let mut row = vec![0u64; 2 * kk];
            for l in 0..k {
                row[y(i, l)] = (row[y(i, l)] + b.get(l, j)) % p;
                row[y(l, j)] = (row[y(l, j)] + neg(b.get(i, l))) % p;
            }
            rows.push(row);
            // (xu - y)_ij
            let mut row = vec![0u64; 2 * kk];
            for l in 0..k {
                row[x(i, l)] = (row[x(i, l)] + u.get(l, j)) % p;
            }
            row[y(i, j)] = neg(1);
            rows.push(row);
        }
    }

    let space = fp::solve(&LinearSystem::homogeneous(p, 2 * kk, rows))?
        .expect("homogeneous systems are consistent");
    if space.basis.is_empty() {
        return Err(Error::AttackFailed("only the trivial solution exists"));
    }
    for _ in 0..combinations {
        let mut sol = vec![0u64; 2 * kk];
        for vec in &space.basis {
            let c = rng.gen_range(0..p);
            for (s, b) in sol.iter_mut().zip(vec) {
                *s = (*s + c * b) % p;
            }
        }
        let xm = FpMatrix::new(k, p, sol[..kk].to_vec())?;
        let ym = FpMatrix::new(k, p, sol[kk..].to_vec())?;
        if let Some(x_inv) = xm.inverse() {
            return Ok(x_inv.mul(v).mul(&ym));
        }
    }
    Err(Error::AttackFailed("no invertible x found among sampled solutions"))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackStats {
    pub k: usize,
    pub p: u64,
    pub trials: u32,
    /// Recovered key equal to the honest key.
    pub recovered: u32,
    /// Attack returned a key that differs from the honest one.
    pub wrong: u32,
    /// No usable solution found.
    pub failed: u32,
}

impl AttackStats {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            f64::from(self.recovered) / f64::from(self.trials)
        }
    }
}

/// Runs `trials` independent protocol instances and attacks each one.
pub fn attack_trials(k: usize, p: u64, trials: u32, seed: u64) -> Result<AttackStats> {
    let mut seeds = rng::stream(seed, rng::label::CLASSICAL_SETUP);
    let mut attack_rng = rng::stream(seed, rng::label::CLASSICAL_ATTACK);
    let mut stats = AttackStats { k, p, trials, ..Default::default() };
    for _ in 0..trials {
        let inst = run(k, p, seeds.gen())?;
        match attack(&inst.a, &inst.b, &inst.u, &inst.v, DEFAULT_COMBINATIONS, &mut attack_rng) {
            Ok(key) if key == inst.key => stats.recovered += 1,
            Ok(_) => stats.wrong += 1,
            Err(Error::AttackFailed(_)) => stats.failed += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn honest_runs_agree_and_replay() {
        let inst = run(2, 101, 5).unwrap();
        assert_eq!(inst.key, inst.a.pow(inst.n + inst.r).mul(&inst.b.pow(inst.m + inst.s)));
        assert_eq!(run(2, 101, 5).unwrap(), inst);
        assert_ne!(run(2, 101, 6).unwrap(), inst);
    }

    #[test]
    fn run_rejects_scalars_and_bad_modulus() {
        assert!(matches!(run(1, 101, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(run(3, 100, 0), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn attack_recovers_key() {
        let mut rng = rng::stream(0, 0);
        for seed in 0..10 {
            let inst = run(3, 101, seed).unwrap();
            let key = attack(&inst.a, &inst.b, &inst.u, &inst.v, DEFAULT_COMBINATIONS, &mut rng)
                .unwrap();
            assert_eq!(key, inst.key);
        }
    }

    #[test]
    fn attack_rejects_commuting_inputs() {
        let inst = run(3, 101, 1).unwrap();
        let mut rng = rng::stream(0, 0);
        assert!(matches!(
            attack(&inst.a, &inst.a, &inst.u, &inst.v, 10, &mut rng),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn tampered_offer_defeats_attack() {
        let mut rng = rng::stream(3, 0);
        for seed in 0..10 {
            let inst = run(3, 101, seed).unwrap();
            let fake_u = FpMatrix::random(3, 101, &mut rng);
            match attack(&inst.a, &inst.b, &fake_u, &inst.v, DEFAULT_COMBINATIONS, &mut rng) {
                Ok(key) => assert_ne!(key, inst.key),
                Err(e) => assert!(matches!(e, Error::AttackFailed(_))),
            }
        }
    }

    #[test]
    fn trial_statistics_add_up() {
        let stats = attack_trials(2, 101, 20, 9).unwrap();
        assert_eq!(stats.recovered + stats.wrong + stats.failed, 20);
        assert_eq!(stats.wrong, 0);
    }
}
