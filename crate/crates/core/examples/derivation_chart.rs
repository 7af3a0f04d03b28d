//! Derivation chart of the two-anchor family on a 4-dimensional model.
//!
//! With `a = CS(Y₁,X)`, `c = CS(Y₂,X)` and `κ = CS(Y₁,Y₂) > e`, the ascending
//! strata are
//!
//! | name | condition      |
//! |------|----------------|
//! | A    | a < c/κ        |
//! | ∂A   | a = c/κ > 0    |
//! | B    | c/κ < a < c    |
//! | ∂B   | a = c > 0      |
//! | E    | a = 0 < c      |
//! | ∂E   | a = c = 0      |
//!
//! Run with `cargo run --example derivation_chart`; pass a path to also write
//! the DOT graph.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troprays::quadspace::random_vector;
use troprays::strata::{derivation_chart, example_family, sign_vector_at};
use troprays::{QuadraticPair, Ray};

fn ascending_type(p: &QuadraticPair, y1: &Ray, y2: &Ray, x: &Ray) -> Option<&'static str> {
    let a = p.cs(y1.base(), x.base()).ok()?;
    let c = p.cs(y2.base(), x.base()).ok()?;
    let c_k = &c * &p.cs(y1.base(), y2.base()).ok()?.inv();
    Some(match () {
        _ if c.is_zero() => "∂E",
        _ if a.is_zero() => "E",
        _ if a < c_k => "A",
        _ if a == c_k => "∂A",
        _ if a < c => "B",
        _ if a == c => "∂B",
        _ => return None,
    })
}

fn main() -> troprays::Result<()> {
    let o = Some;
    let p = QuadraticPair::from_ints(
        &[o(0), o(0), o(0), o(0)],
        &[
            &[o(0), o(2), None, None],
            &[o(2), o(0), o(0), None],
            &[None, o(0), o(0), None],
            &[None, None, None, o(0)],
        ],
    )?;
    let (y1, y2) = (Ray::basis(4, 0), Ray::basis(4, 1));
    println!("kappa = CS(Y1,Y2) = {}", p.cs(y1.base(), y2.base())?);
    let fam = example_family(&p, &y1, &y2)?;

    let mut sample = vec![
        Ray::from_ints(&[None, o(0), o(5), None])?,
        Ray::from_ints(&[o(0), o(-3), None, None])?,
        Ray::from_ints(&[o(0), o(-1), None, None])?,
        Ray::from_ints(&[o(0), o(0), None, None])?,
        Ray::basis(4, 2),
        Ray::basis(4, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    while sample.len() < 120 {
        let x = Ray::new(random_vector(4, &mut rng))?;
        if ascending_type(&p, &y1, &y2, &x).is_some() {
            sample.push(x);
        }
    }

    let mut names = BTreeMap::new();
    for x in &sample {
        if let Some(t) = ascending_type(&p, &y1, &y2, x) {
            names.insert(sign_vector_at(&p, &fam, x)?, t.to_string());
        }
    }
    let chart = derivation_chart(&p, &fam, &sample)?;
    println!("{} strata realized:", chart.nodes.len());
    for s in &chart.nodes {
        println!("  {:<3} {}", names[s], s.describe());
    }
    println!("direct derivations:");
    for (a, b) in chart.edges.keys() {
        println!("  {} -> {}", names[a], names[b]);
    }
    let dot = chart.to_dot(Some(&names));
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, dot).expect("write DOT file"),
        None => print!("{dot}"),
    }
    Ok(())
}
