//! Strata traces and separating rays along intervals.
//!
//! `cargo run --example stratify`

use troprays::isotropy::stratify_halfopen;
use troprays::strata::{example_family, stratify_interval, BasicFunction, Family, StrataTrace};
use troprays::{QuadraticPair, Ray, RayInterval};

fn print_trace(t: &StrataTrace) {
    for pc in &t.pieces {
        let open = if pc.lo_closed { "[" } else { "]" };
        let close = if pc.hi_closed { "]" } else { "[" };
        println!(
            "  {open}{}, {}{close}  {}",
            pc.lo,
            pc.hi,
            pc.label.describe()
        );
    }
    for (k, s) in t.separators.iter().enumerate() {
        println!("  separator {k} at λ = {}: {}", s.param, s.ray);
    }
}

fn main() -> troprays::Result<()> {
    let m1 = QuadraticPair::from_ints(
        &[Some(0), Some(0)],
        &[&[Some(0), Some(2)], &[Some(2), Some(0)]],
    )?;
    let (y1, y2) = (Ray::basis(2, 0), Ray::basis(2, 1));
    let pair = Family::new(vec![
        BasicFunction::cs(y1.clone()),
        BasicFunction::cs(y2.clone()),
    ]);
    println!("CS(Y1,-) against CS(Y2,-) on [Y1, Y2]:");
    print_trace(&stratify_interval(
        &m1,
        &pair,
        &RayInterval::new(y1.clone(), y2.clone())?,
    )?);

    let fam = example_family(&m1, &y1, &y2)?;
    println!("the five-function family on [Y1, Y2]:");
    print_trace(&stratify_interval(&m1, &fam, &RayInterval::new(y1, y2)?)?);

    // An isotropic start: q(e₁) = 0 in this model.
    let m3 = QuadraticPair::from_ints(
        &[None, Some(0), Some(0)],
        &[
            &[None, Some(1), None],
            &[Some(1), Some(0), Some(0)],
            &[None, Some(0), Some(0)],
        ],
    )?;
    let fam3 = example_family(&m3, &Ray::basis(3, 1), &Ray::basis(3, 2))?;
    println!("half-open ]e1, e3] in a model where e1 is isotropic:");
    print_trace(&stratify_halfopen(
        &m3,
        &fam3,
        &Ray::basis(3, 0),
        &Ray::basis(3, 2),
    )?);
    Ok(())
}
