//! Piecewise monomial functions on the parameter domain `[0, ∞]`.
//!
//! A function is a breakpoint list `0 = β₀ < β₁ < … < β_r = ∞` with one
//! monomial `γλ^i` per segment. Inner breakpoints are finite and the function is
//! continuous across them. Coefficients are finite, except for the zero function,
//! which is the single segment `0·λ^0`. Values `0` and `∞` therefore only occur
//! at the two ends of the domain, through nonzero degrees.

use std::cmp::Ordering;
use std::fmt;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semifield::{interior_point, rat, TropValue};

/// `coeff · λ^degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: TropValue,
    pub degree: i64,
}

impl Monomial {
    pub fn new(coeff: TropValue, degree: i64) -> Self {
        if coeff.is_zero() {
            Monomial { coeff, degree: 0 }
        } else {
            Monomial { coeff, degree }
        }
    }

    pub fn eval(&self, lambda: &TropValue) -> TropValue {
        if self.coeff.is_zero() {
            TropValue::Zero
        } else {
            &self.coeff * &lambda.powi(self.degree)
        }
    }

    fn eval_finite(&self, lambda: &BigRational) -> TropValue {
        self.eval(&TropValue::Finite(lambda.clone()))
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &other.coeff, self.degree + other.degree)
    }

    /// The point where two monomials of different degrees agree.
    pub fn crossing(&self, other: &Monomial) -> Option<BigRational> {
        match (&self.coeff, &other.coeff) {
            (TropValue::Finite(c1), TropValue::Finite(c2)) if self.degree != other.degree => {
                Some((c2 - c1) / rat(self.degree - other.degree))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}·λ^{}", self.coeff, self.degree)
    }
}

/// A maximal run of the domain carrying a single label, with closure flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece<T> {
    pub lo: TropValue,
    pub hi: TropValue,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub label: T,
}

impl<T> Piece<T> {
    pub fn contains(&self, l: &TropValue) -> bool {
        let above = if self.lo_closed {
            *l >= self.lo
        } else {
            *l > self.lo
        };
        let below = if self.hi_closed {
            *l <= self.hi
        } else {
            *l < self.hi
        };
        above && below
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// A parameter inside the piece.
    pub fn sample(&self) -> TropValue {
        if self.lo == self.hi {
            self.lo.clone()
        } else {
            TropValue::Finite(interior_point(&self.lo, &self.hi))
        }
    }
}

/// Either a breakpoint or the open cell between two consecutive breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Point(TropValue),
    Open(TropValue, TropValue),
}

impl Elem {
    /// A parameter inside the element.
    pub fn sample(&self) -> TropValue {
        match self {
            Elem::Point(p) => p.clone(),
            Elem::Open(u, v) => TropValue::Finite(interior_point(u, v)),
        }
    }
}

/// `{p₀}, ]p₀,p₁[, {p₁}, …, {p_r}` for sorted distinct points.
pub fn elementary(points: &[TropValue]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(2 * points.len());
    for (k, p) in points.iter().enumerate() {
        if k > 0 {
            out.push(Elem::Open(points[k - 1].clone(), p.clone()));
        }
        out.push(Elem::Point(p.clone()));
    }
    out
}

/// Merges consecutive elements with equal labels into pieces.
pub fn merge_runs<T: PartialEq + Clone>(elems: &[(Elem, T)]) -> Vec<Piece<T>> {
    let mut out: Vec<Piece<T>> = Vec::new();
    for (e, label) in elems {
        let (lo, hi, closed) = match e {
            Elem::Point(p) => (p.clone(), p.clone(), true),
            Elem::Open(u, v) => (u.clone(), v.clone(), false),
        };
        match out.last_mut() {
            Some(last) if last.label == *label => {
                last.hi = hi;
                last.hi_closed = closed;
            }
            _ => out.push(Piece {
                lo,
                hi,
                lo_closed: closed,
                hi_closed: closed,
                label: label.clone(),
            }),
        }
    }
    out
}

#[derive(Deserialize)]
struct RawPm {
    breakpoints: Vec<TropValue>,
    segments: Vec<Monomial>,
}

/// A continuous piecewise monomial function on `[0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPm")]
pub struct PmFunction {
    breakpoints: Vec<TropValue>,
    segments: Vec<Monomial>,
}

impl TryFrom<RawPm> for PmFunction {
    type Error = Error;
    fn try_from(r: RawPm) -> Result<Self> {
        PmFunction::new(r.breakpoints, r.segments)
    }
}

impl PmFunction {
    /// Validates shape and continuity, then merges redundant breakpoints.
    pub fn new(breakpoints: Vec<TropValue>, segments: Vec<Monomial>) -> Result<Self> {
        if segments.is_empty() || breakpoints.len() != segments.len() + 1 {
            return Err(Error::MalformedPm(
                "need r segments and r+1 breakpoints".into(),
            ));
        }
        if breakpoints[0] != TropValue::Zero || *breakpoints.last().unwrap() != TropValue::Infinity
        {
            return Err(Error::MalformedPm("domain must be [0, inf]".into()));
        }
        let inner = &breakpoints[1..breakpoints.len() - 1];
        if inner.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedPm(
                "inner breakpoints must be finite and increasing".into(),
            ));
        }
        if segments.iter().any(|m| m.coeff.is_infinite()) {
            return Err(Error::MalformedPm(
                "coefficients must be finite or zero".into(),
            ));
        }
        let segments: Vec<Monomial> = segments
            .into_iter()
            .map(|m| Monomial::new(m.coeff, m.degree))
            .collect();
        for (k, b) in inner.iter().enumerate() {
            if segments[k].eval(b) != segments[k + 1].eval(b) {
                return Err(Error::DiscontinuousInput(b.to_string()));
            }
        }
        Ok(PmFunction {
            breakpoints,
            segments,
        }
        .normalized())
    }

    pub fn monomial(coeff: TropValue, degree: i64) -> Self {
        PmFunction {
            breakpoints: vec![TropValue::Zero, TropValue::Infinity],
            segments: vec![Monomial::new(coeff, degree)],
        }
    }

    pub fn constant(c: TropValue) -> Self {
        Self::monomial(c, 0)
    }

    pub fn zero() -> Self {
        Self::constant(TropValue::Zero)
    }

    /// `max_k c_k λ^{d_k}`; zero coefficients are dropped.
    pub fn polynomial(terms: &[(TropValue, i64)]) -> Self {
        terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .fold(Self::zero(), |acc, (c, d)| {
                pm_add(&acc, &Self::monomial(c.clone(), *d))
            })
    }

    pub fn breakpoints(&self) -> &[TropValue] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Monomial] {
        &self.segments
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.segments.iter().map(|m| m.degree).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].coeff.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].degree == 0
    }

    fn normalized(mut self) -> Self {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut segs: Vec<Monomial> = Vec::new();
        for (k, m) in self.segments.drain(..).enumerate() {
            if segs.last() == Some(&m) {
                *bps.last_mut().unwrap() = self.breakpoints[k + 1].clone();
            } else {
                segs.push(m);
                bps.push(self.breakpoints[k + 1].clone());
            }
        }
        PmFunction {
            breakpoints: bps,
            segments: segs,
        }
    }

    /// Assembles a function from consecutive cells `(hi, monomial)` starting at 0.
    fn from_cells(cells: Vec<(TropValue, Monomial)>) -> Self {
        let mut bps = vec![TropValue::Zero];
        let mut segs = Vec::with_capacity(cells.len());
        for (hi, m) in cells {
            bps.push(hi);
            segs.push(m);
        }
        let f = PmFunction {
            breakpoints: bps,
            segments: segs,
        }
        .normalized();
        debug_assert!(
            PmFunction::new(f.breakpoints.clone(), f.segments.clone()).is_ok(),
            "{f}"
        );
        f
    }

    /// The monomial in force on the cell `[u, v]` of a refinement.
    fn monomial_on(&self, u: &TropValue, v: &TropValue) -> &Monomial {
        let k = self.breakpoints.iter().rposition(|b| b <= u).unwrap_or(0);
        debug_assert!(*v <= self.breakpoints[k + 1]);
        &self.segments[k.min(self.segments.len() - 1)]
    }

    pub fn eval(&self, lambda: &TropValue) -> TropValue {
        let k = self
            .breakpoints
            .iter()
            .skip(1)
            .position(|b| lambda <= b)
            .unwrap_or(self.segments.len() - 1);
        self.segments[k].eval(lambda)
    }

    /// Sorted breakpoints of `self` and `other` together.
    fn merged_points(&self, other: &PmFunction) -> Vec<TropValue> {
        let mut pts: Vec<TropValue> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .cloned()
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Common refinement of `self` and `other`, split where their monomials cross.
    fn crossing_cells(
        &self,
        other: &PmFunction,
    ) -> Vec<(TropValue, TropValue, Monomial, Monomial)> {
        let pts = self.merged_points(other);
        let mut out = Vec::new();
        for w in pts.windows(2) {
            let (u, v) = (&w[0], &w[1]);
            let (m1, m2) = (
                self.monomial_on(u, v).clone(),
                other.monomial_on(u, v).clone(),
            );
            match m1.crossing(&m2).map(TropValue::Finite) {
                Some(x) if *u < x && x < *v => {
                    out.push((u.clone(), x.clone(), m1.clone(), m2.clone()));
                    out.push((x, v.clone(), m1, m2));
                }
                _ => out.push((u.clone(), v.clone(), m1, m2)),
            }
        }
        out
    }

    /// All points where the comparison of `self` and `other` may change.
    pub fn comparison_points(&self, other: &PmFunction) -> Vec<TropValue> {
        let mut pts = vec![TropValue::Zero];
        pts.extend(self.crossing_cells(other).into_iter().map(|c| c.1));
        pts
    }
}

impl fmt::Display for PmFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(
                f,
                "[{}, {}]: {}",
                self.breakpoints[k],
                self.breakpoints[k + 1],
                m
            )?;
        }
        Ok(())
    }
}

fn pick(f: &PmFunction, g: &PmFunction, want: Ordering) -> PmFunction {
    let cells = f
        .crossing_cells(g)
        .into_iter()
        .map(|(u, v, m1, m2)| {
            let x = interior_point(&u, &v);
            let m = if m1.eval_finite(&x).cmp(&m2.eval_finite(&x)) == want {
                m1
            } else {
                m2
            };
            (v, m)
        })
        .collect();
    PmFunction::from_cells(cells)
}

/// `f + g`, the pointwise maximum.
pub fn pm_add(f: &PmFunction, g: &PmFunction) -> PmFunction {
    pick(f, g, Ordering::Greater)
}

/// `f ∧ g`, the pointwise minimum.
pub fn pm_min(f: &PmFunction, g: &PmFunction) -> PmFunction {
    pick(f, g, Ordering::Less)
}

/// `f · g`.
pub fn pm_mul(f: &PmFunction, g: &PmFunction) -> PmFunction {
    let pts = f.merged_points(g);
    let cells = pts
        .windows(2)
        .map(|w| {
            (
                w[1].clone(),
                f.monomial_on(&w[0], &w[1])
                    .times(g.monomial_on(&w[0], &w[1])),
            )
        })
        .collect();
    PmFunction::from_cells(cells)
}

/// `c · f` for a constant `c`.
pub fn pm_scale(f: &PmFunction, c: &TropValue) -> PmFunction {
    pm_mul(f, &PmFunction::constant(c.clone()))
}

/// `f⁻¹`; `f` must not vanish on `]0, ∞[`.
pub fn pm_invert(f: &PmFunction) -> Result<PmFunction> {
    if f.is_zero() {
        return Err(Error::DomainMismatch(
            "the zero function has no inverse".into(),
        ));
    }
    Ok(PmFunction {
        breakpoints: f.breakpoints.clone(),
        segments: f
            .segments
            .iter()
            .map(|m| Monomial::new(m.coeff.inv(), -m.degree))
            .collect(),
    })
}

/// `f / g`.
pub fn pm_div(f: &PmFunction, g: &PmFunction) -> Result<PmFunction> {
    Ok(pm_mul(f, &pm_invert(g)?))
}

pub fn pm_eval(f: &PmFunction, lambda: &TropValue) -> TropValue {
    f.eval(lambda)
}

/// `(min f, max f)` over `[0, ∞]`.
pub fn image(f: &PmFunction) -> (TropValue, TropValue) {
    let vals: Vec<TropValue> = f.breakpoints.iter().map(|b| f.eval(b)).collect();
    (
        vals.iter().min().unwrap().clone(),
        vals.iter().max().unwrap().clone(),
    )
}

/// `φ ∘ f`.
pub fn compose(phi: &PmFunction, f: &PmFunction) -> Result<PmFunction> {
    if f.is_zero() {
        return match phi.eval(&TropValue::Zero) {
            TropValue::Infinity => Err(Error::DomainMismatch("phi(0) is inf".into())),
            c => Ok(PmFunction::constant(c)),
        };
    }
    let mut cells = Vec::new();
    for (k, m) in f.segments.iter().enumerate() {
        let (u, v) = (&f.breakpoints[k], &f.breakpoints[k + 1]);
        if m.degree == 0 {
            cells.push((v.clone(), Monomial::new(phi.eval(&m.coeff), 0)));
            continue;
        }
        let gamma = m
            .coeff
            .exponent()
            .expect("nonzero function has finite coefficients");
        let mut cuts: Vec<TropValue> = phi.breakpoints[1..phi.breakpoints.len() - 1]
            .iter()
            .map(|p| TropValue::Finite((p.exponent().unwrap() - gamma) / rat(m.degree)))
            .filter(|x| u < x && x < v)
            .collect();
        cuts.push(v.clone());
        cuts.sort();
        let mut lo = u.clone();
        for hi in cuts {
            let mid = f.eval(&TropValue::Finite(interior_point(&lo, &hi)));
            let outer = phi.monomial_on(&mid, &mid);
            let inner = Monomial::new(
                &outer.coeff * &m.coeff.powi(outer.degree),
                m.degree * outer.degree,
            );
            cells.push((hi.clone(), inner));
            lo = hi;
        }
    }
    Ok(PmFunction::from_cells(cells))
}

/// The restriction of `f` to `[π(ζ), π(η)]`, reparametrized over `[0, ∞]`
/// with base points `ε₁ + ζε₂` and `ε₁ + ηε₂`.
///
/// For finite `η` the result is `f(ζ)` up to `ζ/η`, then `f(μη)` up to `e`,
/// then `f(η)`. For `η = ∞` it is `f(ζ + μ)`.
pub fn restrict(f: &PmFunction, zeta: &TropValue, eta: &TropValue) -> Result<PmFunction> {
    if zeta >= eta || zeta.is_infinite() {
        return Err(Error::BadSubinterval(format!("[{zeta}, {eta}]")));
    }
    let mut cells = Vec::new();
    let (shift, top) = match eta {
        TropValue::Infinity => (TropValue::e(), TropValue::Infinity),
        e => (e.clone(), TropValue::e()),
    };
    let left_end = zeta.times(&shift.inv())?;
    if !zeta.is_zero() {
        cells.push((left_end.clone(), Monomial::new(f.eval(zeta), 0)));
    }
    for (k, m) in f.segments.iter().enumerate() {
        let lo = f.breakpoints[k].plus(zeta);
        let hi = f.breakpoints[k + 1].meet(eta);
        if lo >= hi {
            continue;
        }
        let hi_mu = hi.times(&shift.inv())?;
        let coeff = if m.coeff.is_zero() {
            TropValue::Zero
        } else {
            &m.coeff * &shift.powi(m.degree)
        };
        cells.push((hi_mu, Monomial::new(coeff, m.degree)));
    }
    if !top.is_infinite() {
        cells.push((TropValue::Infinity, Monomial::new(f.eval(eta), 0)));
    }
    Ok(PmFunction::from_cells(cells))
}

/// Sign pieces of `f` against `g`: where `f < g`, `f = g` and `f > g`.
pub fn compare(f: &PmFunction, g: &PmFunction) -> Vec<Piece<Ordering>> {
    let elems: Vec<(Elem, Ordering)> = elementary(&f.comparison_points(g))
        .into_iter()
        .map(|e| {
            let s = e.sample();
            let o = f.eval(&s).cmp(&g.eval(&s));
            (e, o)
        })
        .collect();
    merge_runs(&elems)
}

/// With `c = min(f(0), f(∞))`, the first maximal open interval on which `f < c`.
pub fn has_glen(f: &PmFunction) -> Option<(TropValue, TropValue)> {
    let c = f.eval(&TropValue::Zero).meet(&f.eval(&TropValue::Infinity));
    match c {
        TropValue::Zero => None,
        // Inner values are finite, hence below both ends.
        TropValue::Infinity => Some((TropValue::Zero, TropValue::Infinity)),
        c => compare(f, &PmFunction::constant(c))
            .into_iter()
            .find(|p| p.label == Ordering::Less)
            .map(|p| (p.lo, p.hi)),
    }
}
