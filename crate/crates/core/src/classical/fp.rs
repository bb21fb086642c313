use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::InvalidParams(format!("modulus {p} must be a prime below 2^32")));
    }
    Ok(())
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Fermat: a^{p-2}.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    Some(acc)
}

/// A `k × k` matrix over `F_p`, entries reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    k: usize,
    p: u64,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn new(k: usize, p: u64, entries: Vec<u64>) -> Result<Self> {
        check_modulus(p)?;
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, found: entries.len() });
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(Self { k, p, entries })
    }

    pub fn identity(k: usize, p: u64) -> Self {
        let entries = (0..k * k).map(|i| u64::from(i / k == i % k)).collect();
        Self { k, p, entries }
    }

    pub fn random(k: usize, p: u64, rng: &mut impl Rng) -> Self {
        let entries = (0..k * k).map(|_| rng.gen_range(0..p)).collect();
        Self { k, p, entries }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.p), (other.k, other.p), "incompatible matrices");
        let (k, p) = (self.k, self.p);
        let mut entries = vec![0u64; k * k];
        for i in 0..k {
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a == 0 {
                    continue;
                }
                for j in 0..k {
                    let e = &mut entries[i * k + j];
                    *e = (*e + a * other.entries[l * k + j]) % p;
                }
            }
        }
        Self { k, p, entries }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.k, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Gauss–Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let (k, p) = (self.k, self.p);
        let mut a = self.entries.clone();
        let mut inv = Self::identity(k, p).entries;
        for col in 0..k {
            let pivot = (col..k).find(|&r| a[r * k + col] != 0)?;
            if pivot != col {
                for j in 0..k {
                    a.swap(pivot * k + j, col * k + j);
                    inv.swap(pivot * k + j, col * k + j);
                }
            }
            let s = inv_mod(a[col * k + col], p)?;
            for j in 0..k {
                a[col * k + j] = a[col * k + j] * s % p;
                inv[col * k + j] = inv[col * k + j] * s % p;
            }
            for r in 0..k {
                let f = a[r * k + col];
                if r == col || f == 0 {
                    continue;
                }
                for j in 0..k {
                    a[r * k + j] = (a[r * k + j] + (p - f) * a[col * k + j]) % p;
                    inv[r * k + j] = (inv[r * k + j] + (p - f) * inv[col * k + j]) % p;
                }
            }
        }
        Some(Self { k, p, entries: inv })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }
}

/// `rows · x = rhs` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub p: u64,
    pub unknowns: usize,
    pub rows: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
}

impl LinearSystem {
    pub fn homogeneous(p: u64, unknowns: usize, rows: Vec<Vec<u64>>) -> Self {
        let rhs = vec![0; rows.len()];
        Self { p, unknowns, rows, rhs }
    }
}

/// All solutions: `particular + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub particular: Vec<u64>,
    pub basis: Vec<Vec<u64>>,
}

/// Reduces the augmented matrix to row echelon form and reads off a particular
/// solution and a basis of the homogeneous solutions. Returns `Ok(None)` when
/// the system is inconsistent.
pub fn solve(system: &LinearSystem) -> Result<Option<SolutionSpace>> {
    let p = system.p;
    check_modulus(p)?;
    let n = system.unknowns;
    if system.rows.len() != system.rhs.len() {
        return Err(Error::DimensionMismatch { expected: system.rows.len(), found: system.rhs.len() });
    }
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(system.rows.len());
    for (row, &b) in system.rows.iter().zip(&system.rhs) {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        let mut r: Vec<u64> = row.iter().map(|v| v % p).collect();
        r.push(b % p);
        m.push(r);
    }

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pr);
        let s = inv_mod(m[rank][col], p).expect("nonzero pivot");
        for v in &mut m[rank] {
            *v = *v * s % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let f = row[col];
            if r == rank || f == 0 {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + (p - f) * pv) % p;
            }
        }
        pivots.push(col);
        rank += 1;
    }

    if m[rank..].iter().any(|row| row[n] != 0) {
        return Ok(None);
    }

    let mut particular = vec![0u64; n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = (p - m[r][f]) % p;
            }
            v
        })
        .collect();
    Ok(Some(SolutionSpace { particular, basis }))
}
