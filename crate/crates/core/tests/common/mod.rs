//! Independent oracles shared by the integration tests.
//!
//! Values are handled as exponents: `Some(r)` stands for `t^r`, `None` for the
//! zero element. Forms are evaluated straight from their coefficients, and
//! piecewise monomial functions are recovered by scanning exponents on a grid.
#![allow(dead_code)]

use std::cmp::Ordering;

use num::rational::Rational64;
use num::{BigRational, ToPrimitive};
use rand::Rng;
use troprays::pmfunc::{Monomial, PmFunction};
use troprays::quadspace::{random_vector, QuadraticPair};
use troprays::semifield::ratio;
use troprays::strata::{BasicFunction, Family, SignVector};
use troprays::{Ray, RayInterval, TropValue, Vector};

/// Exponents stay small in every test, so machine-word rationals suffice.
pub type Q = Rational64;

pub type Exp = Option<Q>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn to_q(r: &BigRational) -> Q {
    Q::new(
        r.numer().to_i64().expect("numerator fits"),
        r.denom().to_i64().expect("denominator fits"),
    )
}

pub fn to_big(r: &Q) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

pub fn exp_of(v: &TropValue) -> Exp {
    match v {
        TropValue::Zero => None,
        TropValue::Finite(r) => Some(to_q(r)),
        TropValue::Infinity => panic!("infinite value has no exponent"),
    }
}

pub fn trop_of(e: &Exp) -> TropValue {
    e.as_ref()
        .map_or(TropValue::Zero, |r| TropValue::Finite(to_big(r)))
}

fn mul(a: &Exp, b: &Exp) -> Exp {
    Some(*a.as_ref()? + *b.as_ref()?)
}

fn add(a: Exp, b: Exp) -> Exp {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(y)),
    }
}

pub fn coords(v: &Vector) -> Vec<Exp> {
    v.coords().iter().map(exp_of).collect()
}

/// The coefficients of a quadratic pair, evaluated without the library.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub alpha: Vec<Exp>,
    pub beta: Vec<Vec<Exp>>,
}

impl Oracle {
    pub fn of(p: &QuadraticPair) -> Self {
        Oracle {
            alpha: p.q_diag().iter().map(exp_of).collect(),
            beta: p
                .b_matrix()
                .iter()
                .map(|r| r.iter().map(exp_of).collect())
                .collect(),
        }
    }

    /// `max_i (α_i + 2x_i)` against `max_{i<j} (β_ij + x_i + x_j)`.
    pub fn q(&self, x: &[Exp]) -> Exp {
        let n = x.len();
        let mut acc = None;
        for i in 0..n {
            acc = add(acc, mul(&self.alpha[i], &mul(&x[i], &x[i])));
            for j in i + 1..n {
                acc = add(acc, mul(&self.beta[i][j], &mul(&x[i], &x[j])));
            }
        }
        acc
    }

    pub fn b(&self, x: &[Exp], y: &[Exp]) -> Exp {
        let mut acc = None;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc = add(acc, mul(&self.beta[i][j], &mul(xi, yj)));
            }
        }
        acc
    }

    /// `2·b(x,y) − q(x) − q(y)`; panics on isotropic arguments.
    pub fn cs(&self, x: &[Exp], y: &[Exp]) -> Exp {
        let qx = self.q(x).expect("x is isotropic");
        let qy = self.q(y).expect("y is isotropic");
        self.b(x, y).map(|b| b + b - qx - qy)
    }

    pub fn family_value(&self, fam: &Family, x: &[Exp]) -> Exp {
        let mut acc = None;
        for f in &fam.functions {
            acc = add(acc, self.basic_value(f, x));
        }
        acc
    }

    pub fn basic_value(&self, f: &BasicFunction, x: &[Exp]) -> Exp {
        f.terms.iter().fold(None, |acc, (c, y)| {
            add(acc, mul(&exp_of(c), &self.cs(x, &coords(y.base()))))
        })
    }

    pub fn sign_vector(&self, fam: &Family, x: &[Exp]) -> SignVector {
        let vals: Vec<TropValue> = fam
            .functions
            .iter()
            .map(|f| trop_of(&self.basic_value(f, x)))
            .collect();
        SignVector::from_values(&vals)
    }
}

/// `ε₁ + λε₂` coordinatewise, for a finite exponent `λ`.
pub fn segment_point(e1: &[Exp], e2: &[Exp], lambda: &Q) -> Vec<Exp> {
    let l = Some(*lambda);
    e1.iter()
        .zip(e2)
        .map(|(a, b)| add(*a, mul(&l, b)))
        .collect()
}

/// Breakpoints and segment slopes of a piecewise linear exponent function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub breaks: Vec<Q>,
    /// `slopes[k]` holds left of `breaks[k]`; the last entry is the final slope.
    pub slopes: Vec<Q>,
}

/// Recovers the kinks of `g` on `[lo, hi]` from a grid of `steps` cells.
///
/// Runs of grid points where the secant slope changes are resolved by
/// intersecting the lines on either side; when the intersection does not check
/// out the run is rescanned on a finer grid.
pub fn scan(g: &dyn Fn(&Q) -> Q, lo: &Q, hi: &Q, steps: i64) -> Scan {
    let mut breaks = Vec::new();
    scan_into(g, lo, hi, steps, 0, &mut breaks);
    breaks.sort();
    breaks.dedup();
    let mut slopes = Vec::new();
    let mut a = *lo;
    for b in breaks.iter().chain(std::iter::once(hi)) {
        slopes.push((g(b) - g(&a)) / (b - a));
        a = *b;
    }
    Scan { breaks, slopes }
}

fn scan_into(g: &dyn Fn(&Q) -> Q, lo: &Q, hi: &Q, steps: i64, depth: u32, out: &mut Vec<Q>) {
    assert!(depth < 12, "scan did not resolve near {lo}");
    let h = (hi - lo) / Q::from_integer(steps);
    let xs: Vec<Q> = (0..=steps).map(|k| lo + h * Q::from_integer(k)).collect();
    let ys: Vec<Q> = xs.iter().map(g).collect();
    let slope: Vec<Q> = (0..steps as usize)
        .map(|k| (ys[k + 1] - ys[k]) / h)
        .collect();
    let kink = |k: usize| slope[k - 1] != slope[k];
    let mut k = 1;
    while k < steps as usize {
        if !kink(k) {
            k += 1;
            continue;
        }
        let i = k;
        while k < steps as usize && kink(k) {
            k += 1;
        }
        let j = k - 1;
        // Lines on the cells [x_{i-1}, x_i] and [x_j, x_{j+1}].
        let (a, b) = (&xs[i - 1], &xs[j + 1]);
        let (sl, sr) = (&slope[i - 1], &slope[j]);
        let left = |x: &Q| ys[i - 1] + sl * (x - a);
        let right = |x: &Q| ys[j] + sr * (x - xs[j]);
        let resolved = (sl != sr)
            .then(|| (ys[j] - sr * xs[j] - ys[i - 1] + sl * a) / (sl - sr))
            .filter(|x| {
                a <= x && x <= b && {
                    let probes = 8;
                    (0..=probes).all(|m| {
                        let t = Q::new(m, probes);
                        let pl = a + (x - a) * t;
                        let pr = x + (b - x) * t;
                        g(&pl) == left(&pl) && g(&pr) == right(&pr)
                    })
                }
            });
        match resolved {
            Some(x) => out.push(x),
            None => scan_into(g, a, b, 16, depth + 1, out),
        }
    }
}

/// The exponent of `λ ↦ CS(ε₁ + λε₂, w)` as a function of the exponent of `λ`.
pub fn cs_exponent<'a>(o: &'a Oracle, i: &RayInterval, w: &Vector) -> impl Fn(&Q) -> Q + 'a {
    let (e1, e2, wc) = (coords(i.eps1()), coords(i.eps2()), coords(w));
    move |l| {
        o.cs(&segment_point(&e1, &e2, l), &wc)
            .expect("witness perpendicular to the interval")
    }
}

pub fn sign(o: Ordering) -> char {
    match o {
        Ordering::Less => '<',
        Ordering::Equal => '=',
        Ordering::Greater => '>',
    }
}

/// A random quadratic pair in dimension `n`; `α` is finite unless `isotropic`
/// names a coordinate whose diagonal entry is zero.
#[allow(clippy::needless_range_loop)]
pub fn random_pair<R: Rng>(n: usize, isotropic: Option<usize>, rng: &mut R) -> QuadraticPair {
    loop {
        let alpha: Vec<TropValue> = (0..n)
            .map(|i| {
                if Some(i) == isotropic {
                    TropValue::Zero
                } else {
                    rand_exp(rng, 12)
                }
            })
            .collect();
        let mut beta = vec![vec![TropValue::Zero; n]; n];
        for i in 0..n {
            beta[i][i] = match &alpha[i] {
                TropValue::Finite(a) if rng.gen_bool(0.7) => TropValue::Finite(a.clone()),
                TropValue::Finite(a) => {
                    TropValue::Finite(a - BigRational::from_integer(rng.gen_range(1..4).into()))
                }
                _ => TropValue::Zero,
            };
            for j in i + 1..n {
                let v = if rng.gen_bool(0.2) {
                    TropValue::Zero
                } else {
                    rand_exp(rng, 12)
                };
                beta[i][j] = v.clone();
                beta[j][i] = v;
            }
        }
        if let Ok(p) = QuadraticPair::new(alpha, beta) {
            return p;
        }
    }
}

pub fn rand_exp<R: Rng>(rng: &mut R, bound: i64) -> TropValue {
    TropValue::Finite(ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3)))
}

/// A random ray with `q ≠ 0`.
pub fn anisotropic_ray<R: Rng>(p: &QuadraticPair, rng: &mut R) -> Ray {
    loop {
        let v = random_vector(p.dim(), rng);
        if !v.is_zero() && !p.q(&v).unwrap().is_zero() {
            return Ray::new(v).unwrap();
        }
    }
}

/// A random anisotropic interval.
pub fn random_interval<R: Rng>(p: &QuadraticPair, rng: &mut R) -> RayInterval {
    loop {
        let (a, b) = (anisotropic_ray(p, rng), anisotropic_ray(p, rng));
        if let Ok(i) = RayInterval::new(a, b) {
            return i;
        }
    }
}

/// Either the five-function family of two anchors or a random family of
/// tropical combinations of CS-functions.
pub fn random_family<R: Rng>(p: &QuadraticPair, rng: &mut R) -> Family {
    let anchors: Vec<Ray> = (0..rng.gen_range(2..=3))
        .map(|_| anisotropic_ray(p, rng))
        .collect();
    if rng.gen_bool(0.5) && anchors[0] != anchors[1] {
        if let Ok(f) = troprays::strata::example_family(p, &anchors[0], &anchors[1]) {
            return f;
        }
    }
    let m = rng.gen_range(2..=4);
    Family::new(
        (0..m)
            .map(|_| {
                let k = rng.gen_range(1..=2);
                BasicFunction {
                    terms: (0..k)
                        .map(|_| {
                            (
                                rand_exp(rng, 6),
                                anchors[rng.gen_range(0..anchors.len())].clone(),
                            )
                        })
                        .collect(),
                }
            })
            .collect(),
    )
}

/// A random continuous piecewise monomial function with up to four breakpoints.
pub fn random_pm<R: Rng>(rng: &mut R) -> PmFunction {
    if rng.gen_bool(0.03) {
        return PmFunction::zero();
    }
    let k = rng.gen_range(0..=4);
    let mut cuts: Vec<BigRational> = (0..k)
        .map(|_| ratio(rng.gen_range(-24..=24), rng.gen_range(1..=4)))
        .collect();
    cuts.sort();
    cuts.dedup();
    let mut degrees = vec![rng.gen_range(-3..=3)];
    for _ in 0..cuts.len() {
        let prev = *degrees.last().unwrap();
        let d = loop {
            let d = rng.gen_range(-3..=3);
            if d != prev {
                break d;
            }
        };
        degrees.push(d);
    }
    let mut coeff = ratio(rng.gen_range(-12..=12), rng.gen_range(1..=3));
    let mut segments = vec![Monomial::new(TropValue::Finite(coeff.clone()), degrees[0])];
    for (m, c) in cuts.iter().enumerate() {
        coeff += c * BigRational::from_integer((degrees[m] - degrees[m + 1]).into());
        segments.push(Monomial::new(
            TropValue::Finite(coeff.clone()),
            degrees[m + 1],
        ));
    }
    let mut bps = vec![TropValue::Zero];
    bps.extend(cuts.into_iter().map(TropValue::Finite));
    bps.push(TropValue::Infinity);
    PmFunction::new(bps, segments).expect("continuous by construction")
}

/// `f(t^s)` from the segments, as an exponent.
pub fn pm_exponent(f: &PmFunction, s: &Q) -> Exp {
    let l = TropValue::Finite(to_big(s));
    let bps = f.breakpoints();
    let k = (0..f.segments().len())
        .find(|&k| bps[k] <= l && l <= bps[k + 1])
        .unwrap();
    let m = &f.segments()[k];
    exp_of(&m.coeff).map(|c| c + s * m.degree)
}
