//! Approaching an isotropic ray: entrance stratum and stability threshold.
//!
//! `cargo run --example isotropic_entry`

use troprays::isotropy::{entrance_stratum, stability_check};
use troprays::{QuadraticPair, Ray, TropValue, Vector};

fn main() -> troprays::Result<()> {
    let p = QuadraticPair::from_ints(
        &[None, Some(0), Some(0)],
        &[
            &[None, Some(1), None],
            &[Some(1), Some(0), Some(0)],
            &[None, Some(0), Some(0)],
        ],
    )?;
    let (eps, eta) = (Vector::basis(3, 0), Vector::basis(3, 2));
    let (y2, y3) = (Ray::basis(3, 1), Ray::basis(3, 2));
    println!("q(e1) = {}", p.q(&eps)?);

    let a = entrance_stratum(&p, &eps, &eta, &y2, &y3)?;
    let cmp = if a.strict { "<" } else { "≤" };
    println!(
        "case {:?}: stratum {} for t {cmp} {}",
        a.case,
        a.entrance.describe(),
        a.t0
    );
    println!("profile at t = {}: {}", a.probe, a.profile);

    let ts: Vec<TropValue> = (-12..=12).map(|k| TropValue::t_ratio(k, 4)).collect();
    let r = stability_check(&p, &eps, &eta, &y2, &y3, &ts)?;
    println!("stable on the predicted range: {}", r.stable());
    match r.first_change {
        Some(t) => println!("first change at t = {t}"),
        None => println!("no change on the samples"),
    }
    Ok(())
}
