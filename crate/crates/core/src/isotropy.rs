//! Approaching an isotropic ray.
//!
//! For an isotropic `ε` and a direction `η`, the rays `ray(ε + tη)` are
//! anisotropic for `t > 0` as long as `q(ε + tη) = t·b(ε,η) + t²·q(η)` is
//! nonzero. Against the family of two anchors `Y₂ = ray(ε₂)`, `Y₃ = ray(ε₃)`,
//! the stratum of `ray(ε + tη)` is constant for small `t`. The thresholds below
//! say how small.

use std::cmp::Ordering;

use serde::Serialize;

use crate::csfun::cs_along;
use crate::error::{Error, Result};
use crate::pmfunc::{Piece, PmFunction};
use crate::quadspace::{QuadraticPair, Vector};
use crate::rays::{Ray, RayInterval};
use crate::semifield::{interior_point, TropValue};
use crate::strata::{
    example_family, sign_vector_at, stratify_interval, trace_interval, Family, SignVector,
    StrataTrace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ApproachCase {
    /// `b(ε,ε₂), b(ε,ε₃)` both nonzero.
    A,
    /// `b(ε,ε₂) = b(ε,ε₃) = 0`.
    B,
    /// One of them nonzero and `η` perpendicular to the other anchor.
    C1,
    /// One of them nonzero, `η` not perpendicular to the other anchor,
    /// `CS(ε₂,ε₃) > e`.
    C2Wide,
    /// As `C2Wide` but `CS(ε₂,ε₃) ≤ e`.
    C2Narrow,
}

/// The stratum that `ray(ε + tη)` settles in as `t → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicApproach {
    pub case: ApproachCase,
    /// The stratum is constant for `t < t0` (or `t ≤ t0` when not strict).
    pub t0: TropValue,
    pub strict: bool,
    /// Whether the roles of `Y₂` and `Y₃` were swapped to reach the normal form
    /// `b(ε,ε₂) ≠ 0`.
    pub swapped: bool,
    pub entrance: SignVector,
    /// `λ ↦ CS(ε + tη, ε₂ + λε₃)` at the probe parameter.
    pub profile: PmFunction,
    pub probe: TropValue,
}

impl IsotropicApproach {
    /// Whether `t` lies in the range where the entrance stratum is guaranteed.
    pub fn in_stable_range(&self, t: &TropValue) -> bool {
        match (self.strict, t.cmp(&self.t0)) {
            (_, Ordering::Less) => true,
            (false, Ordering::Equal) => true,
            _ => self.t0.is_infinite(),
        }
    }
}

pub fn is_isotropic(p: &QuadraticPair, x: &Vector) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(p.q(x)?.is_zero())
}

fn along(eps: &Vector, eta: &Vector, t: &TropValue) -> Vector {
    eps.plus(&eta.scale(t))
}

/// Classifies the approach `t → 0` of `ray(ε + tη)` against `Y₂, Y₃`.
pub fn entrance_stratum(
    p: &QuadraticPair,
    eps: &Vector,
    eta: &Vector,
    y2: &Ray,
    y3: &Ray,
) -> Result<IsotropicApproach> {
    if !is_isotropic(p, eps)? {
        return Err(Error::IllPosedApproach("ε is anisotropic".into()));
    }
    if eta.is_zero() {
        return Err(Error::ZeroVector);
    }
    if p.b(eps, eta)?.is_zero() && p.q(eta)?.is_zero() {
        return Err(Error::NoAnisotropicInterior);
    }
    let fam = example_family(p, y2, y3)?;
    let (a12, a13) = (p.b(eps, y2.base())?, p.b(eps, y3.base())?);
    let swapped = a12.is_zero() && !a13.is_zero();
    let (e2, e3, a12, a13) = if swapped {
        (y3.base(), y2.base(), a13, a12)
    } else {
        (y2.base(), y3.base(), a12, a13)
    };
    let (case, t0, strict) = if !a12.is_zero() && !a13.is_zero() {
        let t0 = a12.over(&p.b(eta, e2)?)?.meet(&a13.over(&p.b(eta, e3)?)?);
        (ApproachCase::A, t0, false)
    } else if a12.is_zero() {
        (ApproachCase::B, TropValue::Infinity, false)
    } else {
        let bh3 = p.b(eta, e3)?;
        if bh3.is_zero() {
            (ApproachCase::C1, TropValue::Infinity, false)
        } else {
            let (q2, q3) = (p.q(e2)?, p.q(e3)?);
            // CS(ζ,ε₃) < CS(ζ,ε₂)/CS(ε₂,ε₃) solves to t < α₁₂α₃/(α₂₃·b(η,ε₃)).
            if p.cs(e2, e3)? > TropValue::e() {
                let t0 = (&a12 * &q3).over(&(&p.b(e2, e3)? * &bh3))?;
                (ApproachCase::C2Wide, t0, true)
            } else {
                let t0 = &a12.over(&bh3)? * &q3.over(&q2)?.root(2);
                (ApproachCase::C2Narrow, t0, true)
            }
        }
    };
    let probe = match &t0 {
        TropValue::Finite(_) => &t0 * &TropValue::t(-1),
        _ => TropValue::e(),
    };
    let zeta = along(eps, eta, &probe);
    let entrance = sign_vector_at(p, &fam, &Ray::new(zeta.clone())?)?;
    let profile = cs_along(p, &RayInterval::new(y2.clone(), y3.clone())?, &zeta)?;
    Ok(IsotropicApproach {
        case,
        t0,
        strict,
        swapped,
        entrance,
        profile,
        probe,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub approach: IsotropicApproach,
    /// Samples in the stable range whose stratum differs from the entrance.
    pub violations: Vec<TropValue>,
    /// Smallest sample outside the stable range with a different stratum.
    pub first_change: Option<TropValue>,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the stratum of `ray(ε + tη)` on samples and checks it against the
/// predicted stable range.
pub fn stability_check(
    p: &QuadraticPair,
    eps: &Vector,
    eta: &Vector,
    y2: &Ray,
    y3: &Ray,
    t_samples: &[TropValue],
) -> Result<StabilityReport> {
    let approach = entrance_stratum(p, eps, eta, y2, y3)?;
    let fam = example_family(p, y2, y3)?;
    let mut ts: Vec<&TropValue> = t_samples.iter().filter(|t| t.is_finite()).collect();
    ts.sort();
    let mut violations = Vec::new();
    let mut first_change = None;
    for t in ts {
        let sv = sign_vector_at(p, &fam, &Ray::new(along(eps, eta, t))?)?;
        if sv == approach.entrance {
            continue;
        }
        if approach.in_stable_range(t) {
            violations.push(t.clone());
        } else if first_change.is_none() {
            first_change = Some(t.clone());
        }
    }
    Ok(StabilityReport {
        approach,
        violations,
        first_change,
    })
}

/// Stratifies `]W, W']` for an isotropic `W`.
///
/// The trace starts with a piece open at `W`. Its separators are recomputed
/// from two anisotropic rays inside the first piece and must agree.
pub fn stratify_halfopen(
    p: &QuadraticPair,
    fam: &Family,
    w: &Ray,
    w2: &Ray,
) -> Result<StrataTrace> {
    if !p.q(w.base())?.is_zero() {
        return Err(Error::IllPosedApproach("start ray is anisotropic".into()));
    }
    let i = RayInterval::new(w.clone(), w2.clone())?;
    if p.q(&i.point_at(&TropValue::e()))?.is_zero() {
        return Err(Error::NoAnisotropicInterior);
    }
    let trace = trace_interval(p, fam, &i)?;
    let first: &Piece<SignVector> = &trace.pieces[0];
    if first.hi.is_zero() || p.q(w2.base())?.is_zero() {
        return Ok(trace);
    }
    let l1 = TropValue::Finite(interior_point(&TropValue::Zero, &first.hi));
    let l2 = TropValue::Finite(interior_point(&TropValue::Zero, &l1));
    for l in [l1, l2] {
        let sub = stratify_interval(p, fam, &RayInterval::new(i.pi(&l), w2.clone())?)?;
        let same_labels = sub.labels() == trace.labels();
        let same_seps = sub
            .separators
            .iter()
            .map(|s| &s.ray)
            .eq(trace.separators.iter().map(|s| &s.ray));
        if !same_labels || !same_seps {
            return Err(Error::VerificationFailed(format!(
                "separators depend on the inner start {l}"
            )));
        }
    }
    Ok(trace)
}
