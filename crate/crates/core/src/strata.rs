//! Basic functions, sign vectors, stratifications of ray intervals and the
//! derivation chart of a family.
//!
//! A basic function is `f = Σ_j γ_j · CS(Y_j, −)`. For a family
//! `𝔅 = (f_0, …, f_{m-1})` the sign vector of a ray `X` records, for every pair
//! `k < ℓ`, how `f_k(X)` compares with `f_ℓ(X)`. Rays with equal sign vectors
//! form a stratum.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::csfun::cs_along;
use crate::error::{Error, Result};
use crate::pmfunc::{elementary, merge_runs, pm_add, pm_scale, Elem, Piece, PmFunction};
use crate::quadspace::QuadraticPair;
use crate::rays::{Ray, RayInterval};
use crate::semifield::TropValue;

/// `f = Σ_j γ_j · CS(Y_j, −)`; the empty sum is the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicFunction {
    pub terms: Vec<(TropValue, Ray)>,
}

impl BasicFunction {
    pub fn zero() -> Self {
        BasicFunction { terms: vec![] }
    }

    /// `CS(Y, −)`.
    pub fn cs(anchor: Ray) -> Self {
        BasicFunction {
            terms: vec![(TropValue::e(), anchor)],
        }
    }

    /// `γ · CS(Y, −)`.
    pub fn scaled(gamma: TropValue, anchor: Ray) -> Self {
        BasicFunction {
            terms: vec![(gamma, anchor)],
        }
    }

    /// Anchors carrying a nonzero coefficient.
    pub fn anchors(&self) -> impl Iterator<Item = &Ray> {
        self.terms
            .iter()
            .filter(|(g, _)| !g.is_zero())
            .map(|(_, y)| y)
    }

    pub fn eval(&self, p: &QuadraticPair, x: &Ray) -> Result<TropValue> {
        let mut acc = TropValue::Zero;
        for (g, y) in &self.terms {
            if g.is_zero() {
                continue;
            }
            acc = acc.plus(&(g * &p.cs(y.base(), x.rep())?));
        }
        Ok(acc)
    }

    /// The restriction `λ ↦ f(π(λ))`.
    pub fn along(&self, p: &QuadraticPair, i: &RayInterval) -> Result<PmFunction> {
        let mut acc = PmFunction::zero();
        for (g, y) in &self.terms {
            if g.is_zero() {
                continue;
            }
            acc = pm_add(&acc, &pm_scale(&cs_along(p, i, y.base())?, g));
        }
        Ok(acc)
    }
}

/// An ordered family of basic functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub functions: Vec<BasicFunction>,
}

impl Family {
    pub fn new(functions: Vec<BasicFunction>) -> Self {
        Family { functions }
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Distinct anchors with nonzero coefficients, in order of appearance.
    pub fn anchors(&self) -> Vec<Ray> {
        let mut out: Vec<Ray> = Vec::new();
        for y in self.functions.iter().flat_map(BasicFunction::anchors) {
            if !out.contains(y) {
                out.push(y.clone());
            }
        }
        out
    }
}

/// The family attached to a pair of anisotropic anchors `Y₁, Y₂`.
///
/// With `κ = CS(Y₁, Y₂)` it is `{0, CS(Y₁,−), CS(Y₂,−)}` when `κ ≤ e`, and adds
/// `CS(Y₁,−)/κ` and `CS(Y₂,−)/κ` when `κ > e`.
pub fn example_family(p: &QuadraticPair, y1: &Ray, y2: &Ray) -> Result<Family> {
    let kappa = p.cs(y1.base(), y2.base())?;
    let mut fs = vec![
        BasicFunction::zero(),
        BasicFunction::cs(y1.clone()),
        BasicFunction::cs(y2.clone()),
    ];
    if kappa > TropValue::e() {
        fs.push(BasicFunction::scaled(kappa.inv(), y1.clone()));
        fs.push(BasicFunction::scaled(kappa.inv(), y2.clone()));
    }
    Ok(Family::new(fs))
}

fn pair_index(m: usize, k: usize, l: usize) -> usize {
    debug_assert!(k < l && l < m);
    k * (2 * m - k - 1) / 2 + (l - k - 1)
}

fn sign_char(o: Ordering) -> char {
    match o {
        Ordering::Less => '<',
        Ordering::Equal => '=',
        Ordering::Greater => '>',
    }
}

/// Comparisons `f_k ? f_ℓ` for all `k < ℓ`, in lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    m: usize,
    signs: Vec<Ordering>,
}

impl SignVector {
    pub fn from_values(values: &[TropValue]) -> Self {
        let m = values.len();
        let mut signs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for k in 0..m {
            for l in k + 1..m {
                signs.push(values[k].cmp(&values[l]));
            }
        }
        SignVector { m, signs }
    }

    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let signs: Vec<Ordering> = s
            .chars()
            .map(|c| match c {
                '<' => Ok(Ordering::Less),
                '=' => Ok(Ordering::Equal),
                '>' => Ok(Ordering::Greater),
                _ => Err(Error::Parse(format!("bad sign {c:?}"))),
            })
            .collect::<Result<_>>()?;
        if signs.len() != m * m.saturating_sub(1) / 2 {
            return Err(Error::Parse(format!(
                "sign vector {s:?} does not fit {m} functions"
            )));
        }
        Ok(SignVector { m, signs })
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn get(&self, k: usize, l: usize) -> Ordering {
        if k < l {
            self.signs[pair_index(self.m, k, l)]
        } else {
            self.signs[pair_index(self.m, l, k)].reverse()
        }
    }

    /// All pairs `(k, ℓ)`, `k < ℓ`, in storage order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |k| (k + 1..self.m).map(move |l| (k, l)))
    }

    /// Long form such as `f0<f1, f0=f2`.
    pub fn describe(&self) -> String {
        self.pairs()
            .map(|(k, l)| format!("f{k}{}f{l}", sign_char(self.get(k, l))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.signs
            .iter()
            .try_for_each(|&o| f.write_char(sign_char(o)))
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The sign vector of `X`, i.e. the stratum containing it.
pub fn sign_vector_at(p: &QuadraticPair, fam: &Family, x: &Ray) -> Result<SignVector> {
    let vals = fam
        .functions
        .iter()
        .map(|f| f.eval(p, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignVector::from_values(&vals))
}

/// A boundary between two consecutive pieces of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separator {
    pub param: TropValue,
    #[serde(serialize_with = "ser_ray")]
    pub ray: Ray,
}

fn ser_ray<S: Serializer>(r: &Ray, s: S) -> std::result::Result<S::Ok, S::Error> {
    r.rep().serialize(s)
}

/// The decomposition of an interval into maximal runs of constant sign vector.
///
/// `separators[k]` is the boundary between `pieces[k]` and `pieces[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataTrace {
    pub pieces: Vec<Piece<SignVector>>,
    pub separators: Vec<Separator>,
}

impl StrataTrace {
    pub fn labels(&self) -> Vec<&SignVector> {
        self.pieces.iter().map(|p| &p.label).collect()
    }

    /// Per pair, the signs met along the interval, one per piece.
    pub fn pair_pattern(&self, k: usize, l: usize) -> Vec<(Ordering, bool, bool)> {
        self.pieces
            .iter()
            .map(|p| (p.label.get(k, l), p.lo_closed, p.hi_closed))
            .collect()
    }
}

/// The restrictions of all family members to `i`.
pub fn restrictions(p: &QuadraticPair, fam: &Family, i: &RayInterval) -> Result<Vec<PmFunction>> {
    fam.functions.iter().map(|f| f.along(p, i)).collect()
}

/// Traces `i`, leaving out isotropic endpoints.
pub(crate) fn trace_interval(
    p: &QuadraticPair,
    fam: &Family,
    i: &RayInterval,
) -> Result<StrataTrace> {
    let fs = restrictions(p, fam, i)?;
    let mut pts: BTreeSet<TropValue> = BTreeSet::new();
    pts.insert(TropValue::Zero);
    pts.insert(TropValue::Infinity);
    for k in 0..fs.len() {
        pts.extend(fs[k].breakpoints().iter().cloned());
        for l in k + 1..fs.len() {
            pts.extend(fs[k].comparison_points(&fs[l]));
        }
    }
    let pts: Vec<TropValue> = pts.into_iter().collect();
    let drop_start = p.q(i.eps1())?.is_zero();
    let drop_end = p.q(i.eps2())?.is_zero();
    let elems: Vec<(Elem, SignVector)> = elementary(&pts)
        .into_iter()
        .filter(|e| match e {
            Elem::Point(TropValue::Zero) => !drop_start,
            Elem::Point(TropValue::Infinity) => !drop_end,
            _ => true,
        })
        .map(|e| {
            let s = e.sample();
            let vals: Vec<TropValue> = fs.iter().map(|f| f.eval(&s)).collect();
            (e, SignVector::from_values(&vals))
        })
        .collect();
    let pieces = merge_runs(&elems);
    let separators = pieces
        .windows(2)
        .map(|w| Separator {
            param: w[0].hi.clone(),
            ray: i.pi(&w[0].hi),
        })
        .collect();
    Ok(StrataTrace { pieces, separators })
}

/// Stratifies `[W, W']` with anisotropic endpoints.
pub fn stratify_interval(p: &QuadraticPair, fam: &Family, i: &RayInterval) -> Result<StrataTrace> {
    if p.q(i.eps1())?.is_zero() || p.q(i.eps2())?.is_zero() {
        return Err(Error::IsotropicEndpoint);
    }
    trace_interval(p, fam, i)
}

/// Every sign vector obtained from `t` by turning some of the `relaxed`
/// strict pairs into equalities, optionally kept only if realized in `known`.
pub fn relaxation_components(
    t: &SignVector,
    relaxed: &[(usize, usize)],
    known: Option<&BTreeSet<SignVector>>,
) -> Result<BTreeSet<SignVector>> {
    for &(k, l) in relaxed {
        if k == l || k.max(l) >= t.m || t.get(k, l) == Ordering::Equal {
            return Err(Error::NotStrictPair(k, l));
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << relaxed.len()) {
        let mut s = t.clone();
        for (bit, &(k, l)) in relaxed.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                s.signs[pair_index(t.m, k.min(l), k.max(l))] = Ordering::Equal;
            }
        }
        if known.is_none_or(|kn| kn.contains(&s)) {
            out.insert(s);
        }
    }
    Ok(out)
}

/// A sign pattern that may also allow `≤` or `≥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WeakSign {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl WeakSign {
    fn admits(self, o: Ordering) -> bool {
        matches!(
            (self, o),
            (WeakSign::Lt, Ordering::Less)
                | (WeakSign::Le, Ordering::Less | Ordering::Equal)
                | (WeakSign::Eq, Ordering::Equal)
                | (WeakSign::Ge, Ordering::Greater | Ordering::Equal)
                | (WeakSign::Gt, Ordering::Greater)
        )
    }

    fn symbol(self) -> &'static str {
        match self {
            WeakSign::Lt => "<",
            WeakSign::Le => "<=",
            WeakSign::Eq => "=",
            WeakSign::Ge => ">=",
            WeakSign::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakSignVector {
    m: usize,
    signs: Vec<WeakSign>,
}

impl WeakSignVector {
    pub fn satisfied_by(&self, s: &SignVector) -> bool {
        self.m == s.m && self.signs.iter().zip(&s.signs).all(|(w, &o)| w.admits(o))
    }

    pub fn get(&self, k: usize, l: usize) -> WeakSign {
        self.signs[pair_index(self.m, k, l)]
    }
}

impl fmt::Display for WeakSignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.signs.iter().map(|w| w.symbol()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The smallest relaxation of `t` that also admits `t2`, if `t2` is a derivate of `t`.
pub fn minimal_relaxation(t: &SignVector, t2: &SignVector) -> Option<WeakSignVector> {
    if t.m != t2.m {
        return None;
    }
    let signs = t
        .signs
        .iter()
        .zip(&t2.signs)
        .map(|(&a, &b)| match (a, b) {
            (a, b) if a == b => Some(match a {
                Ordering::Less => WeakSign::Lt,
                Ordering::Equal => WeakSign::Eq,
                Ordering::Greater => WeakSign::Gt,
            }),
            (Ordering::Less, Ordering::Equal) => Some(WeakSign::Le),
            (Ordering::Greater, Ordering::Equal) => Some(WeakSign::Ge),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Some(WeakSignVector { m: t.m, signs })
}

/// How two strata meet along a witness interval `[W, W']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectDerivation {
    /// `[W, Z[ ⊂ T` and `[Z, W'] ⊂ T'`: `T'` is a direct derivate of `T`.
    Case1 {
        boundary: Ray,
        param: TropValue,
    },
    /// `[W, Z] ⊂ T` and `]Z, W'] ⊂ T'`: `T` is a direct derivate of `T'`.
    Case2 {
        boundary: Ray,
        param: TropValue,
    },
    NotNeighbors,
}

/// Decides whether `[W, W']` meets only `T` and `T'`, and on which side the boundary lies.
pub fn is_direct_derivate(
    p: &QuadraticPair,
    fam: &Family,
    t: &SignVector,
    t2: &SignVector,
    w: &Ray,
    w2: &Ray,
) -> Result<DirectDerivation> {
    if sign_vector_at(p, fam, w)? != *t || sign_vector_at(p, fam, w2)? != *t2 {
        return Err(Error::WitnessNotInStratum);
    }
    if t == t2 {
        return Err(Error::IllPosedApproach("strata coincide".into()));
    }
    let trace = stratify_interval(p, fam, &RayInterval::new(w.clone(), w2.clone())?)?;
    if trace.pieces.len() != 2 {
        return Ok(DirectDerivation::NotNeighbors);
    }
    let sep = &trace.separators[0];
    Ok(if trace.pieces[1].lo_closed {
        DirectDerivation::Case1 {
            boundary: sep.ray.clone(),
            param: sep.param.clone(),
        }
    } else {
        DirectDerivation::Case2 {
            boundary: sep.ray.clone(),
            param: sep.param.clone(),
        }
    })
}

/// The direct derivations certified by a sample of rays.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationChart {
    pub nodes: BTreeSet<SignVector>,
    /// `T → T'` with the first sample pair certifying it.
    pub edges: BTreeMap<(SignVector, SignVector), (usize, usize)>,
}

impl DerivationChart {
    /// Graphviz text; `names` replaces sign vectors as labels where given.
    pub fn to_dot(&self, names: Option<&BTreeMap<SignVector, String>>) -> String {
        let ids: BTreeMap<&SignVector, usize> =
            self.nodes.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let mut out = String::from("digraph derivations {\n  rankdir=TB;\n");
        for (s, k) in &ids {
            let label = names
                .and_then(|n| n.get(*s))
                .cloned()
                .unwrap_or_else(|| s.to_string());
            let _ = writeln!(
                out,
                "  n{k} [label=\"{label}\", tooltip=\"{}\"];",
                s.describe()
            );
        }
        for ((a, b), (i, j)) in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [comment=\"witnesses {i},{j}\"];",
                ids[a], ids[b]
            );
        }
        out.push_str("}\n");
        out
    }

    /// Edges as index pairs into the sorted node list.
    pub fn edge_indices(&self) -> BTreeSet<(usize, usize)> {
        let ids: BTreeMap<&SignVector, usize> =
            self.nodes.iter().enumerate().map(|(k, s)| (s, k)).collect();
        self.edges.keys().map(|(a, b)| (ids[a], ids[b])).collect()
    }
}

/// Builds the chart of direct derivations witnessed by pairs from `sample`.
pub fn derivation_chart(
    p: &QuadraticPair,
    fam: &Family,
    sample: &[Ray],
) -> Result<DerivationChart> {
    let svs = sample
        .iter()
        .map(|x| sign_vector_at(p, fam, x))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..sample.len())
        .flat_map(|a| (a + 1..sample.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            svs[a] != svs[b]
                && (minimal_relaxation(&svs[a], &svs[b]).is_some()
                    || minimal_relaxation(&svs[b], &svs[a]).is_some())
        })
        .collect();
    let found = pairs
        .par_iter()
        .map(|&(a, b)| {
            let d = is_direct_derivate(p, fam, &svs[a], &svs[b], &sample[a], &sample[b])?;
            Ok(match d {
                DirectDerivation::Case1 { .. } => Some(((svs[a].clone(), svs[b].clone()), (a, b))),
                DirectDerivation::Case2 { .. } => Some(((svs[b].clone(), svs[a].clone()), (a, b))),
                DirectDerivation::NotNeighbors => None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut chart = DerivationChart {
        nodes: svs.into_iter().collect(),
        edges: BTreeMap::new(),
    };
    for (edge, wit) in found.into_iter().flatten() {
        chart.edges.entry(edge).or_insert(wit);
    }
    Ok(chart)
}
