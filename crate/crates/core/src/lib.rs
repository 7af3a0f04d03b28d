//! Exact tropical quadratic forms over the bipotent semifield of rational
//! exponents.
//!
//! The crate is organised bottom-up:
//!
//! - [`semifield`]: values `t^r`, `0` and `∞` with max-plus arithmetic.
//! - [`quadspace`]: vectors, quadratic pairs `(q, b)` and CS-ratios.
//! - [`rays`]: rays, ray intervals and their parametrization.
//! - [`pmfunc`]: piecewise monomial functions on `[0, ∞]`.
//! - [`csfun`]: CS-functions along an interval and their regions.
//! - [`strata`]: sign vectors, strata traces, relaxations and derivation charts.
//! - [`frontier`]: entrances, junctions, butterflies and sectors.
//! - [`isotropy`]: approaching isotropic rays.
//! - [`cli`]: the `troprays` command line.
//!
//! The `examples/` directory has one program per area, e.g.
//! `cargo run --example cs_profile`.

pub mod cli;
pub mod csfun;
pub mod error;
pub mod frontier;
pub mod isotropy;
pub mod pmfunc;
pub mod quadspace;
pub mod rays;
pub mod semifield;
pub mod strata;

pub use error::{Error, Result};
pub use quadspace::{QuadraticPair, Vector};
pub use rays::{Ray, RayInterval};
pub use semifield::TropValue;
