//! Free modules `R^n`, quadratic forms given by a Gram description, and their
//! balanced companions.
//!
//! A form is `q(x) = max_i (α_i + 2x_i) ∨ max_{i<j} (β_ij + x_i + x_j)` in
//! exponents, and its companion is `b(x, y) = max_{i,j} (β_ij + x_i + y_j)`.
//! One symmetric matrix `β` stores both the off-diagonal Gram coefficients and
//! the companion, so `b(ε_i, ε_j)` is `β_ij` by construction.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semifield::TropValue;

/// A vector of `R^n`; coordinates are `0` or finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<TropValue>);

impl Vector {
    pub fn new(coords: Vec<TropValue>) -> Result<Self> {
        if coords.iter().any(TropValue::is_infinite) {
            return Err(Error::InfiniteCoordinate);
        }
        Ok(Vector(coords))
    }

    pub fn from_ints(coords: &[Option<i64>]) -> Self {
        Vector(
            coords
                .iter()
                .map(|c| c.map_or(TropValue::Zero, TropValue::t))
                .collect(),
        )
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![TropValue::Zero; dim])
    }

    /// The standard basis vector `ε_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = TropValue::e();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[TropValue] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TropValue::is_zero)
    }

    /// Largest coordinate.
    pub fn max_coord(&self) -> TropValue {
        self.0.iter().fold(TropValue::Zero, |m, c| m.plus(c))
    }

    /// `λ · x`; `λ` must not be `∞`.
    pub fn scale(&self, lambda: &TropValue) -> Vector {
        assert!(!lambda.is_infinite(), "scaling by inf");
        Vector(self.0.iter().map(|c| lambda * c).collect())
    }

    /// Coordinatewise maximum.
    pub fn plus(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.plus(b))
                .collect(),
        )
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<TropValue>::deserialize(d)?;
        Vector::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A quadratic form together with a balanced companion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticPair {
    dim: usize,
    q_diag: Vec<TropValue>,
    b: Vec<Vec<TropValue>>,
}

/// Outcome of [`validate_pair`] and [`GramData::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub basis_pairs_ok: bool,
    pub samples_checked: usize,
    pub sample_failures: usize,
    /// Indices `i` with `β_ii < α_i`.
    pub non_balanced: Vec<usize>,
    pub first_failure: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.basis_pairs_ok && self.sample_failures == 0
    }
}

fn check_square(dim: usize, q_diag: &[TropValue], m: &[Vec<TropValue>], name: &str) -> Result<()> {
    if q_diag.len() != dim {
        return Err(Error::InvalidModel(format!(
            "q_diag has {} entries, dim is {dim}",
            q_diag.len()
        )));
    }
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidModel(format!("{name} is not {dim}x{dim}")));
    }
    if q_diag
        .iter()
        .chain(m.iter().flatten())
        .any(TropValue::is_infinite)
    {
        return Err(Error::InvalidModel(
            "coefficients must be finite or -inf".into(),
        ));
    }
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate().take(i) {
            if *x != m[j][i] {
                return Err(Error::InvalidModel(format!(
                    "{name} is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

impl QuadraticPair {
    /// Builds a pair from diagonal coefficients `α_i` and the symmetric matrix `β`.
    ///
    /// Rejects asymmetric `β` and any `β_ii > α_i`, which breaks the companion
    /// identity on the basis pair `(ε_i, ε_i)`.
    pub fn new(q_diag: Vec<TropValue>, b: Vec<Vec<TropValue>>) -> Result<Self> {
        let dim = q_diag.len();
        GramData {
            q_diag: q_diag.clone(),
            q_offdiag: b.clone(),
            b: b.clone(),
        }
        .check_basis_pairs()?;
        Ok(QuadraticPair { dim, q_diag, b })
    }

    pub fn from_ints(q_diag: &[Option<i64>], b: &[&[Option<i64>]]) -> Result<Self> {
        let conv = |c: &Option<i64>| c.map_or(TropValue::Zero, TropValue::t);
        Self::new(
            q_diag.iter().map(conv).collect(),
            b.iter().map(|r| r.iter().map(conv).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q_diag(&self) -> &[TropValue] {
        &self.q_diag
    }

    pub fn b_matrix(&self) -> &[Vec<TropValue>] {
        &self.b
    }

    fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn q(&self, x: &Vector) -> Result<TropValue> {
        self.check_dim(x)?;
        Ok(eval_gram(&self.q_diag, &self.b, x))
    }

    pub fn b(&self, x: &Vector, y: &Vector) -> Result<TropValue> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(eval_bilinear(&self.b, x, y))
    }

    /// `CS(x, y) = b(x, y)² / (q(x) q(y))`.
    pub fn cs(&self, x: &Vector, y: &Vector) -> Result<TropValue> {
        let qx = self.q(x)?;
        if qx.is_zero() {
            return Err(Error::IsotropicArgument(x.to_string()));
        }
        let qy = self.q(y)?;
        if qy.is_zero() {
            return Err(Error::IsotropicArgument(y.to_string()));
        }
        let bxy = self.b(x, y)?;
        Ok(&bxy.powi(2) * &(&qx * &qy).inv())
    }

    /// Indices `i` with `β_ii ≠ α_i`.
    pub fn non_balanced(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.b[i][i] != self.q_diag[i])
            .collect()
    }

    /// Whether `q` vanishes only at the zero vector.
    pub fn is_anisotropic(&self) -> bool {
        self.q_diag.iter().all(TropValue::is_finite)
    }
}

fn eval_gram(q_diag: &[TropValue], cross: &[Vec<TropValue>], x: &Vector) -> TropValue {
    let c = x.coords();
    let mut acc = TropValue::Zero;
    for i in 0..c.len() {
        acc = acc.plus(&(&q_diag[i] * &c[i].powi(2)));
        for j in i + 1..c.len() {
            acc = acc.plus(&(&cross[i][j] * &(&c[i] * &c[j])));
        }
    }
    acc
}

fn eval_bilinear(m: &[Vec<TropValue>], x: &Vector, y: &Vector) -> TropValue {
    let (cx, cy) = (x.coords(), y.coords());
    let mut acc = TropValue::Zero;
    for i in 0..cx.len() {
        if cx[i].is_zero() {
            continue;
        }
        for j in 0..cy.len() {
            acc = acc.plus(&(&m[i][j] * &(&cx[i] * &cy[j])));
        }
    }
    acc
}

pub fn eval_q(p: &QuadraticPair, x: &Vector) -> Result<TropValue> {
    p.q(x)
}

pub fn eval_b(p: &QuadraticPair, x: &Vector, y: &Vector) -> Result<TropValue> {
    p.b(x, y)
}

pub fn cs_ratio(p: &QuadraticPair, x: &Vector, y: &Vector) -> Result<TropValue> {
    p.cs(x, y)
}

/// A raw Gram description whose off-diagonal form coefficients may differ from
/// the proposed companion; used to vet models before they become a
/// [`QuadraticPair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramData {
    pub q_diag: Vec<TropValue>,
    pub q_offdiag: Vec<Vec<TropValue>>,
    pub b: Vec<Vec<TropValue>>,
}

impl GramData {
    fn check_basis_pairs(&self) -> Result<()> {
        let n = self.q_diag.len();
        check_square(n, &self.q_diag, &self.b, "b")?;
        check_square(n, &self.q_diag, &self.q_offdiag, "q_offdiag")?;
        for i in 0..n {
            for j in i..n {
                let (x, y) = (Vector::basis(n, i), Vector::basis(n, j));
                if let Some(msg) = self.identity_failure(&x, &y) {
                    return Err(Error::InvalidModel(format!(
                        "companion identity fails on basis pair ({i},{j}): {msg}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn identity_failure(&self, x: &Vector, y: &Vector) -> Option<String> {
        let q = |v: &Vector| eval_gram(&self.q_diag, &self.q_offdiag, v);
        let lhs = q(&x.plus(y));
        let rhs = q(x).plus(&q(y)).plus(&eval_bilinear(&self.b, x, y));
        (lhs != rhs).then(|| format!("x={x} y={y}: q(x+y)={lhs} but q(x)+q(y)+b(x,y)={rhs}"))
    }

    /// Checks `q(x+y) = q(x) + q(y) + b(x,y)` on all basis pairs and on random
    /// sample pairs.
    pub fn validate<R: Rng>(&self, samples: usize, rng: &mut R) -> ValidationReport {
        let n = self.q_diag.len();
        let shape = check_square(n, &self.q_diag, &self.b, "b")
            .and_then(|_| check_square(n, &self.q_diag, &self.q_offdiag, "q_offdiag"));
        if let Err(e) = shape {
            return ValidationReport {
                basis_pairs_ok: false,
                samples_checked: 0,
                sample_failures: 0,
                non_balanced: vec![],
                first_failure: Some(e.to_string()),
            };
        }
        let mut report = ValidationReport {
            basis_pairs_ok: self.check_basis_pairs().is_ok(),
            samples_checked: 0,
            sample_failures: 0,
            non_balanced: (0..n).filter(|&i| self.b[i][i] < self.q_diag[i]).collect(),
            first_failure: None,
        };
        if let Err(e) = self.check_basis_pairs() {
            report.first_failure = Some(e.to_string());
        }
        for _ in 0..samples {
            let x = random_vector(n, rng);
            let y = random_vector(n, rng);
            report.samples_checked += 1;
            if let Some(msg) = self.identity_failure(&x, &y) {
                report.sample_failures += 1;
                report.first_failure.get_or_insert(msg);
            }
        }
        report
    }
}

/// Validates a pair on its basis pairs and on `samples` random pairs.
pub fn validate_pair<R: Rng>(p: &QuadraticPair, samples: usize, rng: &mut R) -> ValidationReport {
    GramData {
        q_diag: p.q_diag.clone(),
        q_offdiag: p.b.clone(),
        b: p.b.clone(),
    }
    .validate(samples, rng)
}

/// Bounds for random exponents `p/q` with `|p| ≤ num`, `1 ≤ q ≤ den`, and the
/// chance that a coordinate is `0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleBounds {
    pub num: i64,
    pub den: i64,
    pub zero_prob: f64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            num: 12,
            den: 3,
            zero_prob: 0.2,
        }
    }
}

impl SampleBounds {
    pub fn value<R: Rng>(&self, rng: &mut R) -> TropValue {
        TropValue::t_ratio(
            rng.gen_range(-self.num..=self.num),
            rng.gen_range(1..=self.den.max(1)),
        )
    }
}

/// A random vector with small rational exponents and occasional zero coordinates.
pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> Vector {
    random_vector_with(n, &SampleBounds::default(), rng)
}

pub fn random_vector_with<R: Rng>(n: usize, bounds: &SampleBounds, rng: &mut R) -> Vector {
    loop {
        let v = Vector(
            (0..n)
                .map(|_| {
                    if rng.gen_bool(bounds.zero_prob) {
                        TropValue::Zero
                    } else {
                        bounds.value(rng)
                    }
                })
                .collect(),
        );
        if !v.is_zero() {
            return v;
        }
    }
}
