//! Butterflies on a frontier, checked on interior rays.
//!
//! `cargo run --example butterfly`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troprays::frontier::Frontier;
use troprays::strata::example_family;
use troprays::{QuadraticPair, Ray, RayInterval, TropValue, Vector};

fn ray(c: &[&str]) -> troprays::Result<Ray> {
    Ray::new(Vector::new(
        c.iter().map(|s| s.parse()).collect::<Result<_, _>>()?,
    )?)
}

fn main() -> troprays::Result<()> {
    let row = |c: [&str; 3]| {
        c.iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<TropValue>, _>>()
    };
    let p = QuadraticPair::new(
        row(["-2", "1", "1"])?,
        vec![
            row(["-2", "1", "-3"])?,
            row(["1", "1", "3"])?,
            row(["-3", "3", "1"])?,
        ],
    )?;
    let fam = example_family(&p, &ray(&["3", "-2", "-3"])?, &ray(&["-inf", "0", "-inf"])?)?;
    let (w, w2, u) = (
        ray(&["-inf", "-inf", "-1"])?,
        ray(&["-4", "-1", "5/2"])?,
        ray(&["3", "-3", "-7/2"])?,
    );
    let fr = Frontier::certified(&p, &fam, &w, &u)?;

    let bf = fr.construct_butterfly(&w, &w2, &u)?;
    println!(
        "W  = {}\nW1 = {}\nZ  = {}\nZ1 = {}",
        bf.w, bf.w1, bf.z, bf.z1
    );
    println!(
        "c = {}, d = {}, representative scale {}",
        bf.c, bf.d, bf.kappa
    );

    // Every ray of [W, W1] should see every ray of [Z, Z1] across the frontier.
    let (left, right) = (
        RayInterval::new(bf.w.clone(), bf.w1.clone())?,
        RayInterval::new(bf.z.clone(), bf.z1.clone())?,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut draw = |i: &RayInterval| {
        i.pi(&TropValue::Finite(troprays::semifield::ratio(
            rng.gen_range(-40..=40),
            4,
        )))
    };
    let (mut ok, total) = (0, 50);
    for _ in 0..total {
        let (a, b) = (draw(&left), draw(&right));
        if fr.sector_member(&a, &b)? {
            ok += 1;
        }
    }
    println!("{ok}/{total} sampled pairs satisfy A ⊲ B");
    Ok(())
}
