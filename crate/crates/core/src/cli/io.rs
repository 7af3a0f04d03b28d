//! File formats: models, families with named rays, and ray arguments.

use std::collections::BTreeMap;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::quadspace::{GramData, QuadraticPair, Vector};
use crate::rays::{canonicalize, Ray};
use crate::semifield::TropValue;
use crate::strata::{example_family, BasicFunction, Family};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    dim: usize,
    q_diag: Vec<TropValue>,
    b: Vec<Vec<TropValue>>,
    #[serde(default)]
    q_offdiag: Option<Vec<Vec<TropValue>>>,
}

/// A model file together with the hash of its bytes.
pub struct LoadedModel {
    pub gram: GramData,
    pub sha256: String,
}

pub fn load_model(text: &str) -> Result<LoadedModel> {
    let m: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("model: {e}")))?;
    if m.q_diag.len() != m.dim {
        return Err(Error::InvalidModel(format!(
            "dim is {} but q_diag has {} entries",
            m.dim,
            m.q_diag.len()
        )));
    }
    let q_offdiag = m.q_offdiag.unwrap_or_else(|| m.b.clone());
    Ok(LoadedModel {
        gram: GramData {
            q_diag: m.q_diag,
            q_offdiag,
            b: m.b,
        },
        sha256: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

impl LoadedModel {
    /// The quadratic pair, rejecting models whose Gram data and companion disagree.
    pub fn pair(&self) -> Result<QuadraticPair> {
        if self.gram.q_offdiag != self.gram.b {
            return Err(Error::InvalidModel("q_offdiag differs from b".into()));
        }
        QuadraticPair::new(self.gram.q_diag.clone(), self.gram.b.clone())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RaySpec {
    Plain(Vec<TropValue>),
    Pointed { base: Vec<TropValue> },
}

impl RaySpec {
    fn into_ray(self) -> Result<Ray> {
        match self {
            RaySpec::Plain(v) => Ray::new(canonicalize(&Vector::new(v)?)),
            RaySpec::Pointed { base } => Ray::new(Vector::new(base)?),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermSpec {
    coeff: TropValue,
    anchor: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionSpec {
    terms: Vec<TermSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    #[serde(default)]
    rays: BTreeMap<String, RaySpec>,
    #[serde(default)]
    functions: Option<Vec<FunctionSpec>>,
    #[serde(default)]
    example: Option<[String; 2]>,
}

/// A family of basic functions plus the named rays it was declared with.
pub struct Scenario {
    pub family: Family,
    pub rays: BTreeMap<String, Ray>,
}

impl Scenario {
    pub fn empty() -> Self {
        Scenario {
            family: Family::new(vec![]),
            rays: BTreeMap::new(),
        }
    }

    /// A named ray, or a comma-separated list of coordinates such as `0,-5,-inf`.
    ///
    /// Coordinate lists keep the given vector as base point.
    pub fn ray(&self, spec: &str, dim: usize) -> Result<Ray> {
        let r = match self.rays.get(spec) {
            Some(r) => r.clone(),
            None => Ray::new(parse_vector(spec)?)?,
        };
        if r.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: r.dim(),
            });
        }
        Ok(r)
    }
}

pub fn parse_vector(spec: &str) -> Result<Vector> {
    let coords = spec
        .split(',')
        .map(str::parse)
        .collect::<Result<Vec<TropValue>>>()?;
    Vector::new(coords)
}

pub fn load_scenario(text: &str, p: &QuadraticPair) -> Result<Scenario> {
    let f: FamilyFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("family: {e}")))?;
    let mut rays = BTreeMap::new();
    for (name, spec) in f.rays {
        let r = spec.into_ray()?;
        if r.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: r.dim(),
            });
        }
        rays.insert(name, r);
    }
    let lookup = |n: &str| {
        rays.get(n)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("unknown ray {n:?}")))
    };
    let family = match (f.functions, f.example) {
        (Some(fs), None) => Family::new(
            fs.into_iter()
                .map(|fs| {
                    let terms = fs
                        .terms
                        .into_iter()
                        .map(|t| Ok((t.coeff, lookup(&t.anchor)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(BasicFunction { terms })
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        (None, Some([a, b])) => example_family(p, &lookup(&a)?, &lookup(&b)?)?,
        _ => {
            return Err(Error::Parse(
                "family needs exactly one of `functions` or `example`".into(),
            ))
        }
    };
    Ok(Scenario { family, rays })
}
