//! Rays of `R^n`, pointed representatives and closed ray intervals.
//!
//! A ray is stored by its canonical representative, the scalar multiple whose
//! largest coordinate is `e`. Equality, ordering and hashing only look at that
//! representative. The vector the ray was built from is kept as its base point
//! and drives the parametrization `π(λ) = ray(ε₁ + λε₂)` of an interval.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::quadspace::Vector;
use crate::semifield::TropValue;

/// A ray `ray(x) = G·x` with a chosen base point.
#[derive(Clone, Debug)]
pub struct Ray {
    rep: Vector,
    base: Vector,
}

impl Ray {
    pub fn new(x: Vector) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Ray {
            rep: canonicalize(&x),
            base: x,
        })
    }

    /// Ray through the `i`-th basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        Ray::new(Vector::basis(dim, i)).expect("basis vector is nonzero")
    }

    pub fn from_ints(coords: &[Option<i64>]) -> Result<Self> {
        Ray::new(Vector::from_ints(coords))
    }

    /// Canonical representative; its largest coordinate is `e`.
    pub fn rep(&self) -> &Vector {
        &self.rep
    }

    /// The base point the ray was built from.
    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// The same ray with a different base point.
    pub fn rebased(&self, base: Vector) -> Result<Self> {
        let r = Ray::new(base)?;
        if r != *self {
            return Err(Error::NotOnInterval);
        }
        Ok(r)
    }
}

/// Scales `x` so that its largest coordinate is `e`.
pub fn canonicalize(x: &Vector) -> Vector {
    x.scale(&x.max_coord().inv())
}

impl PartialEq for Ray {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for Ray {}

impl Hash for Ray {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.rep.hash(h)
    }
}

impl PartialOrd for Ray {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ray {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rep.cmp(&other.rep)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ray{}", self.rep)
    }
}

/// The closed interval `[Y₁, Y₂]` parametrized by `π(λ) = ray(ε₁ + λε₂)`,
/// `λ ∈ [0, ∞]`, where `ε₁, ε₂` are the base points of the endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayInterval {
    y1: Ray,
    y2: Ray,
}

impl RayInterval {
    pub fn new(y1: Ray, y2: Ray) -> Result<Self> {
        if y1.dim() != y2.dim() {
            return Err(Error::DimensionMismatch {
                expected: y1.dim(),
                got: y2.dim(),
            });
        }
        if y1 == y2 {
            return Err(Error::DegenerateInterval);
        }
        Ok(RayInterval { y1, y2 })
    }

    pub fn start(&self) -> &Ray {
        &self.y1
    }

    pub fn end(&self) -> &Ray {
        &self.y2
    }

    pub fn eps1(&self) -> &Vector {
        self.y1.base()
    }

    pub fn eps2(&self) -> &Vector {
        self.y2.base()
    }

    /// The interval run backwards, `[Y₂, Y₁]`.
    pub fn reversed(&self) -> RayInterval {
        RayInterval {
            y1: self.y2.clone(),
            y2: self.y1.clone(),
        }
    }

    /// The base point `ε₁ + λε₂` of `π(λ)`; for `λ = ∞` this is `ε₂`.
    pub fn point_at(&self, lambda: &TropValue) -> Vector {
        match lambda {
            TropValue::Infinity => self.eps2().clone(),
            l => self.eps1().plus(&self.eps2().scale(l)),
        }
    }

    /// `π(λ)`, pointed at `ε₁ + λε₂`.
    pub fn pi(&self, lambda: &TropValue) -> Ray {
        Ray::new(self.point_at(lambda)).expect("interval points are nonzero")
    }

    /// The smallest `λ` with `π(λ) = Z`, or `None` if `Z` is off the interval.
    pub fn locate(&self, z: &Ray) -> Option<TropValue> {
        let (a, b) = (self.eps1().coords(), self.eps2().coords());
        let zc = z.rep().coords();
        let n = a.len();
        let mut cands = vec![TropValue::Zero, TropValue::Infinity];
        // Past this value every coordinate is governed by λε₂.
        if (0..n).all(|i| a[i].is_zero() || !b[i].is_zero()) {
            let thr = (0..n)
                .filter(|&i| !a[i].is_zero())
                .map(|i| &a[i] * &b[i].inv())
                .max();
            if let Some(t) = thr {
                cands.push(t);
            }
        }
        // A coordinate `i` on the λε₂ branch and a coordinate `j` on the ε₁
        // branch pin the scalar; `i = j` covers the switch points.
        for i in 0..n {
            if b[i].is_zero() || zc[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if a[j].is_zero() || zc[j].is_zero() {
                    continue;
                }
                cands.push(&(&a[j] * &zc[i]) * &(&zc[j] * &b[i]).inv());
            }
        }
        cands.sort();
        cands.dedup();
        cands.into_iter().find(|l| self.pi(l) == *z)
    }

    /// Whether `Z ≤ Z'` in the order of the oriented interval.
    pub fn leq(&self, z: &Ray, z2: &Ray) -> Result<bool> {
        let l1 = self.locate(z).ok_or(Error::NotOnInterval)?;
        let l2 = self.locate(z2).ok_or(Error::NotOnInterval)?;
        Ok(l1 <= l2)
    }

    /// Checks `ray(ε₁ + λε₂) = ray(ε₂ + λ⁻¹ε₁)`.
    pub fn reverse_identity_check(&self, lambda: &TropValue) -> bool {
        self.pi(lambda) == self.reversed().pi(&lambda.inv())
    }

    /// `[π(ζ), π(η)]`, pointed at `ε₁ + ζε₂` and `ε₁ + ηε₂`.
    pub fn sub_interval(&self, zeta: &TropValue, eta: &TropValue) -> Result<RayInterval> {
        if zeta >= eta {
            return Err(Error::BadSubinterval(format!("{zeta} >= {eta}")));
        }
        RayInterval::new(self.pi(zeta), self.pi(eta))
    }
}

pub fn interval_leq(i: &RayInterval, z: &Ray, z2: &Ray) -> Result<bool> {
    i.leq(z, z2)
}

pub fn reverse_identity_check(i: &RayInterval, lambda: &TropValue) -> bool {
    i.reverse_identity_check(lambda)
}
