//! Entrances, sectors, junctions and butterflies of a frontier pair `(T, T')`,
//! where `T'` is a direct derivate of `T`.
//!
//! For `W ∈ T` and `U ∈ T'` the entrance of `[W, U]` is the ray `Z` with
//! `[W, Z[ ⊂ T` and `[Z, U] ⊂ T'`. The sector relation `W ⊲ Z` holds when `Z`
//! is the entrance of `[W, Z]` itself.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadspace::{QuadraticPair, Vector};
use crate::rays::{Ray, RayInterval};
use crate::semifield::TropValue;
use crate::strata::{
    is_direct_derivate, sign_vector_at, stratify_interval, DirectDerivation, Family, SignVector,
};

/// An entrance ray together with its parameter on the interval it was found on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entrance {
    pub ray: Ray,
    pub param: TropValue,
}

/// A frontier pair `(T, T')` inside the stratification of a family.
#[derive(Clone, Debug)]
pub struct Frontier<'a> {
    pub pair: &'a QuadraticPair,
    pub family: &'a Family,
    pub source: SignVector,
    pub target: SignVector,
}

/// A butterfly `(W, W₁; Z, Z₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Butterfly {
    pub w: Ray,
    pub w1: Ray,
    pub z: Ray,
    pub z1: Ray,
    pub c: TropValue,
    pub d: TropValue,
    /// Scale applied to the entrance vector `z` before computing `c` and `d`.
    pub kappa: TropValue,
}

/// How far the entrance vector is scaled down when looking for a representative
/// that yields a butterfly.
pub const BUTTERFLY_SCALES: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JunctionStep {
    pub k: usize,
    pub lambda: TropValue,
    #[serde(serialize_with = "ser_rep")]
    pub ray: Ray,
    pub vector: Vector,
}

fn ser_rep<S: serde::Serializer>(r: &Ray, s: S) -> std::result::Result<S::Ok, S::Error> {
    r.rep().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JunctionOutcome {
    /// The process stopped at step `k`, i.e. `λ_{k+2} ≤ λ_k`.
    Junction {
        k: usize,
        #[serde(serialize_with = "ser_rep")]
        z: Ray,
        verified: bool,
    },
    /// No stop within the iteration budget; partial maxima of the even and odd
    /// parameters.
    Gorge { sigma: TropValue, tau: TropValue },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JunctionReport {
    pub steps: Vec<JunctionStep>,
    pub outcome: JunctionOutcome,
    /// Whether every `z_k` equals `z₀ + σ_k w + τ_k w'`.
    pub closed_form_ok: bool,
}

impl<'a> Frontier<'a> {
    pub fn new(
        pair: &'a QuadraticPair,
        family: &'a Family,
        source: SignVector,
        target: SignVector,
    ) -> Self {
        Frontier {
            pair,
            family,
            source,
            target,
        }
    }

    /// Takes `T` and `T'` from a witness pair `W ∈ T`, `W' ∈ T'` that shows `T'` is
    /// a direct derivate of `T`.
    pub fn certified(
        pair: &'a QuadraticPair,
        family: &'a Family,
        w: &Ray,
        w2: &Ray,
    ) -> Result<Self> {
        let t = sign_vector_at(pair, family, w)?;
        let t2 = sign_vector_at(pair, family, w2)?;
        match is_direct_derivate(pair, family, &t, &t2, w, w2)? {
            DirectDerivation::Case1 { .. } => Ok(Frontier::new(pair, family, t, t2)),
            _ => Err(Error::VerificationFailed(
                "witness pair is not a case 1 derivation".into(),
            )),
        }
    }

    pub fn stratum_of(&self, x: &Ray) -> Result<SignVector> {
        sign_vector_at(self.pair, self.family, x)
    }

    /// Entrance of `[W, U]` for `W ∈ T`, `U ∈ T'`.
    pub fn entrance(&self, w: &Ray, u: &Ray) -> Result<Entrance> {
        if self.stratum_of(w)? != self.source || self.stratum_of(u)? != self.target {
            return Err(Error::WitnessNotInStratum);
        }
        let i = RayInterval::new(w.clone(), u.clone())?;
        let tr = stratify_interval(self.pair, self.family, &i)?;
        if tr.pieces.len() != 2 || !tr.pieces[1].lo_closed {
            return Err(Error::NoEntrance);
        }
        let param = tr.separators[0].param.clone();
        Ok(Entrance {
            ray: i.pi(&param),
            param,
        })
    }

    pub fn entrance_ray(&self, w: &Ray, u: &Ray) -> Result<Ray> {
        Ok(self.entrance(w, u)?.ray)
    }

    /// `W ⊲ Z`: `Z ∈ T'` and `[W, Z[ ⊂ T`.
    pub fn sector_member(&self, w: &Ray, z: &Ray) -> Result<bool> {
        if self.stratum_of(w)? != self.source || self.stratum_of(z)? != self.target {
            return Ok(false);
        }
        match self.entrance(w, z) {
            Ok(e) => Ok(e.ray == *z),
            Err(Error::NoEntrance) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn is_junction(&self, w: &Ray, w2: &Ray, z: &Ray) -> Result<bool> {
        Ok(self.sector_member(w, z)? && self.sector_member(w2, z)?)
    }

    pub fn is_butterfly(&self, w: &Ray, w1: &Ray, z: &Ray, z1: &Ray) -> Result<bool> {
        if z == z1 {
            return Ok(false);
        }
        for (a, b) in [(w, z), (w, z1), (w1, z), (w1, z1)] {
            if !self.sector_member(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Builds a butterfly from `W, W' ∈ T` and an `S`-regular `U ∈ T'`, with `S`
    /// the anchors of the family.
    ///
    /// With `z` the entrance vector of `[W, U]` and `c, d` its regularity bounds,
    /// the candidate is `(W, ray(w + cw'); Z, ray(z + cw'))`. The bounds depend on
    /// the representative of `Z`: with `z = w + νu` itself the candidate is never
    /// a butterfly, because small multiples of `w` are absorbed by `z` while those
    /// of `w + cw'` are not. The representatives `κz` for `κ = e, t⁻¹, …` are
    /// tried in turn and the first candidate passing [`Frontier::is_butterfly`]
    /// is returned.
    pub fn construct_butterfly(&self, w: &Ray, w2: &Ray, u: &Ray) -> Result<Butterfly> {
        if self.stratum_of(w2)? != self.source {
            return Err(Error::WitnessNotInStratum);
        }
        let anchors = self.family.anchors();
        for y in &anchors {
            if self.pair.b(u.base(), y.base())?.is_zero() {
                return Err(Error::NotRegular);
            }
        }
        let z = self.entrance_ray(w, u)?;
        let mut last = None;
        for k in 0..=BUTTERFLY_SCALES {
            let kappa = TropValue::t(-k);
            let zv = z.base().scale(&kappa);
            let (c, d) = regularity_bounds(self.pair, &anchors, &zv, w.base(), w2.base())?;
            let step = if c.is_infinite() {
                TropValue::e()
            } else {
                c.clone()
            };
            let w1 = Ray::new(w.base().plus(&w2.base().scale(&step)))?;
            let z1 = Ray::new(zv.plus(&w2.base().scale(&step)))?;
            if self.is_butterfly(w, &w1, &z, &z1)? {
                return Ok(Butterfly {
                    w: w.clone(),
                    w1,
                    z,
                    z1,
                    c,
                    d,
                    kappa,
                });
            }
            last.get_or_insert((w1, z1));
        }
        let (w1, z1) = last.expect("at least one scale is tried");
        Err(Error::VerificationFailed(format!(
            "({w}, {w1}; {z}, {z1}) is not a butterfly"
        )))
    }

    /// Alternating entrances from `W` and `W'`, starting from the entrance of `[W, U]`.
    pub fn junction_process(
        &self,
        w: &Ray,
        w2: &Ray,
        u: &Ray,
        max_iter: usize,
    ) -> Result<JunctionReport> {
        if self.stratum_of(w2)? != self.source {
            return Err(Error::WitnessNotInStratum);
        }
        let z0 = self.entrance_ray(w, u)?;
        let z0v = z0.base().clone();
        let mut steps = vec![JunctionStep {
            k: 0,
            lambda: TropValue::Zero,
            ray: z0.clone(),
            vector: z0v.clone(),
        }];
        let (mut sigma, mut tau) = (TropValue::Zero, TropValue::Zero);
        let mut closed_form_ok = true;
        for k in 1..=max_iter {
            let (from, dir) = if k % 2 == 1 {
                (w2, w2.base())
            } else {
                (w, w.base())
            };
            let prev = &steps[k - 1];
            let start = Ray::new(prev.vector.clone())?;
            let next = self.entrance_ray(from, &start)?;
            // Smallest λ with ray(z_{k-1} + λ·dir) equal to the entrance.
            let lambda = RayInterval::new(start, from.clone())?
                .locate(&next)
                .ok_or_else(|| Error::VerificationFailed("entrance is off its interval".into()))?;
            if lambda.is_infinite() {
                return Err(Error::VerificationFailed(
                    "entrance coincides with a witness".into(),
                ));
            }
            let vector = prev.vector.plus(&dir.scale(&lambda));
            if k % 2 == 1 {
                tau = tau.plus(&lambda);
            } else {
                sigma = sigma.plus(&lambda);
            }
            let closed = z0v
                .plus(&w.base().scale(&sigma))
                .plus(&w2.base().scale(&tau));
            closed_form_ok &= closed == vector;
            let ray = Ray::new(vector.clone())?;
            steps.push(JunctionStep {
                k,
                lambda: lambda.clone(),
                ray,
                vector,
            });
            if k >= 2 && lambda <= steps[k - 2].lambda {
                let z = steps[k - 1].ray.clone();
                let verified = self.is_junction(w, w2, &z)?;
                return Ok(JunctionReport {
                    steps,
                    outcome: JunctionOutcome::Junction {
                        k: k - 2,
                        z,
                        verified,
                    },
                    closed_form_ok,
                });
            }
        }
        Ok(JunctionReport {
            steps,
            outcome: JunctionOutcome::Gorge { sigma, tau },
            closed_form_ok,
        })
    }

    /// The sector relation between two pools, for Galois closures.
    pub fn sector_table(&self, u_pool: Vec<Ray>, p_pool: Vec<Ray>) -> Result<SectorTable> {
        let member = u_pool
            .par_iter()
            .map(|w| {
                p_pool
                    .iter()
                    .map(|z| self.sector_member(w, z))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SectorTable {
            u_pool,
            p_pool,
            member,
        })
    }
}

/// Bounds `c, d` such that `q` and every `b(−, y_j)` stay constant on
/// `z + μw + λw'` for `μ ≤ d`, `λ ≤ c`.
///
/// `c = min(q(z)/b(z,w'), √(q(z)/q(w')), √(q(z)/b(w,w')), b(z,y_j)/b(w',y_j))`
/// and `d` is the same with `w` and `w'` swapped.
pub fn regularity_bounds(
    p: &QuadraticPair,
    anchors: &[Ray],
    z: &Vector,
    w: &Vector,
    w2: &Vector,
) -> Result<(TropValue, TropValue)> {
    let qz = p.q(z)?;
    if qz.is_zero() {
        return Err(Error::IsotropicArgument(z.to_string()));
    }
    let mixed = qz.over(&p.b(w, w2)?)?.root(2);
    let bound = |v: &Vector| -> Result<TropValue> {
        let mut m = qz
            .over(&p.b(z, v)?)?
            .meet(&qz.over(&p.q(v)?)?.root(2))
            .meet(&mixed);
        for y in anchors {
            let bzy = p.b(z, y.base())?;
            if bzy.is_zero() {
                return Err(Error::NotRegular);
            }
            m = m.meet(&bzy.over(&p.b(v, y.base())?)?);
        }
        Ok(m)
    };
    Ok((bound(w2)?, bound(w)?))
}

/// The relation `W ⊲ Z` tabulated on `U_pool × P_pool`.
#[derive(Clone, Debug)]
pub struct SectorTable {
    pub u_pool: Vec<Ray>,
    pub p_pool: Vec<Ray>,
    pub member: Vec<Vec<bool>>,
}

impl SectorTable {
    /// `L(U)`: the rays of `P_pool` lying in the sector of every `W ∈ U`.
    pub fn galois_l(&self, u: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.p_pool.len())
            .filter(|&z| u.iter().all(|&w| self.member[w][z]))
            .collect()
    }

    /// `S(P)`: the rays of `U_pool` whose sector contains every `Z ∈ P`.
    pub fn galois_s(&self, pset: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.u_pool.len())
            .filter(|&w| pset.iter().all(|&z| self.member[w][z]))
            .collect()
    }
}
