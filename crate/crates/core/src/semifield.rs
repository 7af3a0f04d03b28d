//! The semifield `R = {0} ∪ G` on a logarithmic scale, extended by a formal `∞`.
//!
//! A finite value stores its exponent: `Finite(a)` stands for `t^a`, so the unit
//! `e` is `Finite(0)`. Addition is `max`, multiplication adds exponents.
//! `Zero` is the additive identity and `Infinity` only ever appears as an
//! endpoint of a parameter domain.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `R ∪ {∞}`.
///
/// The derived order is the semifield order: `Zero < Finite(_) < Infinity`,
/// finite values compared by exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropValue {
    Zero,
    Finite(BigRational),
    Infinity,
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl TropValue {
    /// The unit `e = t^0`.
    pub fn e() -> Self {
        TropValue::Finite(BigRational::zero())
    }

    /// `t^n`.
    pub fn t(n: i64) -> Self {
        TropValue::Finite(rat(n))
    }

    /// `t^(p/q)`.
    pub fn t_ratio(p: i64, q: i64) -> Self {
        TropValue::Finite(ratio(p, q))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TropValue::Zero)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropValue::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropValue::Infinity)
    }

    pub fn exponent(&self) -> Option<&BigRational> {
        match self {
            TropValue::Finite(a) => Some(a),
            _ => None,
        }
    }

    /// Tropical sum, i.e. the maximum.
    pub fn plus(&self, other: &TropValue) -> TropValue {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical minimum.
    pub fn meet(&self, other: &TropValue) -> TropValue {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product; `0 · ∞` is rejected.
    pub fn times(&self, other: &TropValue) -> Result<TropValue> {
        use TropValue::*;
        match (self, other) {
            (Zero, Infinity) | (Infinity, Zero) => Err(Error::UndefinedProduct),
            (Zero, _) | (_, Zero) => Ok(Zero),
            (Infinity, _) | (_, Infinity) => Ok(Infinity),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    /// `self · other⁻¹`.
    pub fn over(&self, other: &TropValue) -> Result<TropValue> {
        self.times(&other.inv())
    }

    /// Multiplicative inverse with `0⁻¹ = ∞` and `∞⁻¹ = 0`.
    pub fn inv(&self) -> TropValue {
        match self {
            TropValue::Zero => TropValue::Infinity,
            TropValue::Infinity => TropValue::Zero,
            TropValue::Finite(a) => TropValue::Finite(-a),
        }
    }

    /// The unique `n`-th root.
    pub fn root(&self, n: u32) -> TropValue {
        assert!(n > 0, "root of order 0");
        match self {
            TropValue::Finite(a) => TropValue::Finite(a / rat(n as i64)),
            other => other.clone(),
        }
    }

    /// `self^k` for an integer `k`, with `λ^0 = e` for every `λ`.
    pub fn powi(&self, k: i64) -> TropValue {
        use TropValue::*;
        match (self, k.cmp(&0)) {
            (_, Ordering::Equal) => TropValue::e(),
            (Finite(a), _) => Finite(a * rat(k)),
            (Zero, Ordering::Greater) | (Infinity, Ordering::Less) => Zero,
            (Zero, Ordering::Less) | (Infinity, Ordering::Greater) => Infinity,
        }
    }
}

/// `a + b = max(a, b)`.
pub fn trop_add(a: &TropValue, b: &TropValue) -> TropValue {
    a.plus(b)
}

/// `a · b`, failing on `0 · ∞`.
pub fn trop_mul(a: &TropValue, b: &TropValue) -> Result<TropValue> {
    a.times(b)
}

pub fn nth_root(a: &TropValue, n: u32) -> TropValue {
    a.root(n)
}

pub fn inverse(a: &TropValue) -> TropValue {
    a.inv()
}

impl Add for &TropValue {
    type Output = TropValue;
    fn add(self, rhs: &TropValue) -> TropValue {
        self.plus(rhs)
    }
}

/// Panics on `0 · ∞`; use [`TropValue::times`] when either side may be `∞`.
impl Mul for &TropValue {
    type Output = TropValue;
    fn mul(self, rhs: &TropValue) -> TropValue {
        self.times(rhs).expect("0 * inf is undefined")
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Zero => f.write_str("-inf"),
            TropValue::Infinity => f.write_str("+inf"),
            TropValue::Finite(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for TropValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(TropValue::Zero),
            "+inf" | "inf" => Ok(TropValue::Infinity),
            t => {
                let r = BigRational::from_str(t)
                    .map_err(|_| Error::Parse(format!("not a tropical value: {t:?}")))?;
                Ok(TropValue::Finite(r))
            }
        }
    }
}

impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TropValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point strictly inside the open cell `]lo, hi[`; both bounds may be `0` or `∞`.
pub fn interior_point(lo: &TropValue, hi: &TropValue) -> BigRational {
    use TropValue::*;
    debug_assert!(lo < hi);
    match (lo, hi) {
        (Finite(a), Finite(b)) => (a + b) / rat(2),
        (Zero, Finite(b)) => b - BigRational::one(),
        (Finite(a), Infinity) => a + BigRational::one(),
        _ => BigRational::zero(),
    }
}
