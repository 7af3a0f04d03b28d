//! CS-ratio profiles along a ray interval.
//!
//! Along `[Y₁, Y₂]` the form restricts to the tropical polynomial
//! `q(ε₁ + λε₂) = α₁ + α₁₂λ + α₂λ²`, and for a witness `w` the function
//! `f_w(λ) = CS(π(λ), w)` is the quotient of `b(ε₁,w)² + λ²b(ε₂,w)²` by
//! `q(ε₁ + λε₂)·q(w)`. Both are built exactly in the piecewise monomial algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pmfunc::{pm_div, pm_scale, PmFunction};
use crate::quadspace::{QuadraticPair, Vector};
use crate::rays::{Ray, RayInterval};
use crate::semifield::TropValue;

/// Whether `α₁α₂ < α₁₂²` (three monomials in the profile of `q`) or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProfileCase {
    ThreeTerm,
    TwoTerm,
}

/// Closed parameter intervals `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regions {
    /// Initial region where `f_w` is constant.
    pub a: (TropValue, TropValue),
    /// Middle region without constant subintervals.
    pub b: (TropValue, TropValue),
    /// Final region where `f_w` is constant.
    pub c: (TropValue, TropValue),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCsProfile {
    pub f: PmFunction,
    pub q_profile: PmFunction,
    pub case: ProfileCase,
    pub regions: Regions,
    pub b1: TropValue,
    pub b2: TropValue,
}

impl IntervalCsProfile {
    /// `u_w`, the left end of the middle region.
    pub fn u(&self) -> &TropValue {
        &self.regions.b.0
    }

    /// `v_w`, the right end of the middle region.
    pub fn v(&self) -> &TropValue {
        &self.regions.b.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Uniqueness {
    Right,
    Left,
    Both,
    Unknown,
}

struct EndData {
    a1: TropValue,
    a2: TropValue,
    a12: TropValue,
}

fn end_data(p: &QuadraticPair, i: &RayInterval) -> Result<EndData> {
    Ok(EndData {
        a1: p.q(i.eps1())?,
        a2: p.q(i.eps2())?,
        a12: p.b(i.eps1(), i.eps2())?,
    })
}

fn q_poly(d: &EndData) -> PmFunction {
    PmFunction::polynomial(&[(d.a1.clone(), 0), (d.a12.clone(), 1), (d.a2.clone(), 2)])
}

/// `λ ↦ q(ε₁ + λε₂)`; both endpoints must be anisotropic.
pub fn q_segment_profile(p: &QuadraticPair, i: &RayInterval) -> Result<PmFunction> {
    let d = end_data(p, i)?;
    if d.a1.is_zero() || d.a2.is_zero() {
        return Err(Error::IsotropicEndpoint);
    }
    Ok(q_poly(&d))
}

/// `λ ↦ CS(π(λ), y)` for an anisotropic anchor `y`.
///
/// Unlike [`build_fw`] this accepts isotropic endpoints and anchors perpendicular
/// to both endpoints (giving the zero function); it only needs `q` to be
/// nonzero inside the interval.
pub fn cs_along(p: &QuadraticPair, i: &RayInterval, y: &Vector) -> Result<PmFunction> {
    let qy = p.q(y)?;
    if qy.is_zero() {
        return Err(Error::IsotropicArgument(y.to_string()));
    }
    let d = end_data(p, i)?;
    let den = q_poly(&d);
    if den.is_zero() {
        return Err(Error::NoAnisotropicInterior);
    }
    let b1 = p.b(i.eps1(), y)?;
    let b2 = p.b(i.eps2(), y)?;
    let num = PmFunction::polynomial(&[(b1.powi(2), 0), (b2.powi(2), 2)]);
    Ok(pm_scale(&pm_div(&num, &den)?, &qy.inv()))
}

/// `f_w` on `[Y₁, Y₂]` together with its constant regions.
pub fn build_fw(p: &QuadraticPair, i: &RayInterval, w: &Vector) -> Result<IntervalCsProfile> {
    let d = end_data(p, i)?;
    if d.a1.is_zero() || d.a2.is_zero() {
        return Err(Error::IsotropicEndpoint);
    }
    let b1 = p.b(i.eps1(), w)?;
    let b2 = p.b(i.eps2(), w)?;
    if b1.is_zero() && b2.is_zero() {
        return Err(Error::PerpendicularWitness);
    }
    let f = cs_along(p, i, w)?;
    let ratio = b1.over(&b2)?;
    let three_term = &d.a1 * &d.a2 < d.a12.powi(2);
    let (left, right) = if three_term {
        (&d.a1 * &d.a12.inv(), &d.a12 * &d.a2.inv())
    } else {
        let r = (&d.a1 * &d.a2.inv()).root(2);
        (r.clone(), r)
    };
    let u = ratio.meet(&left);
    let v = ratio.plus(&right);
    Ok(IntervalCsProfile {
        f,
        q_profile: q_poly(&d),
        case: if three_term {
            ProfileCase::ThreeTerm
        } else {
            ProfileCase::TwoTerm
        },
        regions: Regions {
            a: (TropValue::Zero, u.clone()),
            b: (u, v.clone()),
            c: (v, TropValue::Infinity),
        },
        b1,
        b2,
    })
}

/// Which side of `π(λ₀)` the profile value `f_w(λ₀)` is attained uniquely on.
pub fn uniqueness_classify(profile: &IntervalCsProfile, lambda0: &TropValue) -> Uniqueness {
    let (u, v) = (profile.u(), profile.v());
    let right = u < lambda0 && lambda0 <= v;
    let left = u <= lambda0 && lambda0 < v;
    match (right, left) {
        (true, true) => Uniqueness::Both,
        (true, false) => Uniqueness::Right,
        (false, true) => Uniqueness::Left,
        (false, false) => Uniqueness::Unknown,
    }
}

/// Combines the certificates of several witnesses: `Right` if some witness has
/// `λ₀ ∈ ]u_w, v_w]`, `Left` if some has `λ₀ ∈ [u_w, v_w[`, `Both` if both kinds
/// occur.
pub fn uniqueness_over(
    p: &QuadraticPair,
    i: &RayInterval,
    lambda0: &TropValue,
    witnesses: &[Vector],
) -> Result<Uniqueness> {
    let (mut right, mut left) = (false, false);
    for w in witnesses {
        match uniqueness_classify(&build_fw(p, i, w)?, lambda0) {
            Uniqueness::Both => (right, left) = (true, true),
            Uniqueness::Right => right = true,
            Uniqueness::Left => left = true,
            Uniqueness::Unknown => {}
        }
    }
    Ok(match (right, left) {
        (true, true) => Uniqueness::Both,
        (true, false) => Uniqueness::Right,
        (false, true) => Uniqueness::Left,
        (false, false) => Uniqueness::Unknown,
    })
}

/// `f_W` for a witness ray, taken at its base point.
pub fn restrict_cs(p: &QuadraticPair, i: &RayInterval, w: &Ray) -> Result<PmFunction> {
    cs_along(p, i, w.base())
}
