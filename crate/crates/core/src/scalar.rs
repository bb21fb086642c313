//! The min-plus semiring over the integers extended by the epsilon element.
//!
//! `⊕` is `min`, `⊗` is ordinary addition and `⊘` is ordinary subtraction.
//! Epsilon (`∞`) is neutral for `⊕` and absorbing for `⊗`. All finite
//! arithmetic is checked; overflow is reported as [`Error::Overflow`].

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the min-plus semiring: a signed integer or epsilon.
///
/// The derived ordering places every finite value below `Eps`, which is the
/// order `⊕` takes the minimum in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropScalar {
    Finite(i64),
    Eps,
}

pub use TropScalar::{Eps, Finite};

impl TropScalar {
    /// Multiplicative identity.
    pub const ONE: TropScalar = Finite(0);
    /// Additive identity.
    pub const ZERO: TropScalar = Eps;

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(v) => Some(v),
            Eps => None,
        }
    }

    /// `a ⊕ b = min(a, b)`.
    pub fn oplus(self, rhs: Self) -> Self {
        self.min(rhs)
    }

    /// `a ⊗ b = a + b`, with epsilon absorbing.
    pub fn otimes(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => a.checked_add(b).map(Finite).ok_or(Error::Overflow),
            _ => Ok(Eps),
        }
    }

    /// The unique `z` with `rhs ⊗ z = self`.
    pub fn oslash(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (_, Eps) => Err(Error::DivisionByEpsilon),
            (Eps, Finite(_)) => Ok(Eps),
            (Finite(a), Finite(b)) => a.checked_sub(b).map(Finite).ok_or(Error::Overflow),
        }
    }

    /// `self^{⊗k}`; negative `k` goes through `⊘`.
    pub fn opow(self, k: i64) -> Result<Self> {
        match self {
            Eps if k > 0 => Ok(Eps),
            Eps => Err(Error::EpsilonPower(k)),
            Finite(a) => a.checked_mul(k).map(Finite).ok_or(Error::Overflow),
        }
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Eps => f.write_str("inf"),
        }
    }
}

impl FromStr for TropScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Eps);
        }
        s.parse::<i64>()
            .map(Finite)
            .map_err(|e| Error::Parse(format!("scalar {s:?}: {e}")))
    }
}

impl Serialize for TropScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_i64(*v),
            Eps => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for TropScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = TropScalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or the string \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<TropScalar, E> {
                Ok(Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<TropScalar, E> {
                i64::try_from(v)
                    .map(Finite)
                    .map_err(|_| E::custom("scalar out of i64 range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<TropScalar, E> {
                if v == "inf" {
                    Ok(Eps)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}
