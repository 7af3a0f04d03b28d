//! The CS-function `λ ↦ CS(ε₁ + λε₂, w)` along an interval, with its regions.
//!
//! The model is `q(x) = x₁² + t²x₁x₂ + x₂²` on two coordinates.
//!
//! `cargo run --example cs_profile`

use troprays::csfun::{build_fw, uniqueness_classify};
use troprays::{QuadraticPair, Ray, RayInterval, TropValue};

fn main() -> troprays::Result<()> {
    let p = QuadraticPair::from_ints(
        &[Some(0), Some(0)],
        &[&[Some(0), Some(2)], &[Some(2), Some(0)]],
    )?;
    let i = RayInterval::new(Ray::basis(2, 0), Ray::basis(2, 1))?;

    for w in [Ray::basis(2, 0), Ray::from_ints(&[Some(0), Some(-1)])?] {
        let prof = build_fw(&p, &i, w.base())?;
        println!("witness {w}:");
        println!("  q along the interval: {:?}", prof.q_profile.degrees());
        for (k, m) in prof.f.segments().iter().enumerate() {
            let lo = &prof.f.breakpoints()[k];
            let hi = &prof.f.breakpoints()[k + 1];
            println!("  on [{lo}, {hi}]: {m}");
        }
        println!("  case {:?}", prof.case);
        println!("  A = [{}, {}]", prof.regions.a.0, prof.regions.a.1);
        println!("  B = [{}, {}]", prof.regions.b.0, prof.regions.b.1);
        println!("  C = [{}, {}]", prof.regions.c.0, prof.regions.c.1);
        for l in [TropValue::t(-3), TropValue::e(), TropValue::t(3)] {
            let x = i.point_at(&l);
            println!(
                "  λ = {l}: f_w = {}, CS direct = {}, uniqueness {:?}",
                prof.f.eval(&l),
                p.cs(&x, w.base())?,
                uniqueness_classify(&prof, &l)
            );
        }
    }
    Ok(())
}
