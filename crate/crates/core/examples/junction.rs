//! The junction process between a stratum and a direct derivate.
//!
//! `cargo run --example junction`

use troprays::frontier::{Frontier, JunctionOutcome, JunctionReport};
use troprays::strata::{example_family, BasicFunction, Family};
use troprays::{QuadraticPair, Ray, Vector};

fn report(r: &JunctionReport) {
    for s in &r.steps {
        println!("  k={} λ={} Z={}", s.k, s.lambda, s.ray);
    }
    match &r.outcome {
        JunctionOutcome::Junction { k, z, verified } => {
            println!("  stops at k={k}: junction {z}, verified {verified}")
        }
        JunctionOutcome::Gorge { sigma, tau } => println!("  no stop: σ={sigma}, τ={tau}"),
    }
    println!("  z_k = z_0 + σw + τw' at every step: {}", r.closed_form_ok);
}

fn main() -> troprays::Result<()> {
    let m1 = QuadraticPair::from_ints(
        &[Some(0), Some(0)],
        &[&[Some(0), Some(2)], &[Some(2), Some(0)]],
    )?;
    let fam = Family::new(vec![
        BasicFunction::cs(Ray::basis(2, 0)),
        BasicFunction::cs(Ray::basis(2, 1)),
    ]);
    let r = |a, b| Ray::from_ints(&[Some(a), Some(b)]);
    let (w, w2, u) = (r(0, -5)?, r(0, -3)?, r(0, 0)?);
    let fr = Frontier::certified(&m1, &fam, &w, &u)?;
    println!("two coordinates, T = {}, T' = {}:", fr.source, fr.target);
    report(&fr.junction_process(&w, &w2, &u, 256)?);

    let p = QuadraticPair::new(
        ["-2", "1", "1"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
        vec![
            ["-2", "1", "-3"]
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?,
            ["1", "1", "3"]
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?,
            ["-3", "3", "1"]
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?,
        ],
    )?;
    let v = |c: &[&str]| -> troprays::Result<Ray> {
        Ray::new(Vector::new(
            c.iter().map(|s| s.parse()).collect::<Result<_, _>>()?,
        )?)
    };
    let fam = example_family(&p, &v(&["3", "-2", "-3"])?, &v(&["-inf", "0", "-inf"])?)?;
    let (w, w2, u) = (
        v(&["-inf", "-inf", "-1"])?,
        v(&["-4", "-1", "5/2"])?,
        v(&["3", "-3", "-7/2"])?,
    );
    let fr = Frontier::certified(&p, &fam, &w, &u)?;
    println!("three coordinates, T = {}, T' = {}:", fr.source, fr.target);
    report(&fr.junction_process(&w, &w2, &u, 256)?);
    println!("with a budget of one step:");
    report(&fr.junction_process(&w, &w2, &u, 1)?);
    Ok(())
}
