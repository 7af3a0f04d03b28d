//! Sector relation and its Galois closures on finite pools.
//!
//! `cargo run --example galois`

use std::collections::BTreeSet;

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

    let pts = |i: &RayInterval| -> Vec<Ray> {
        [-4, 0, 4].iter().map(|&k| i.pi(&TropValue::t(k))).collect()
    };
    let mut u_pool = vec![w.clone(), w2.clone(), bf.w1.clone()];
    u_pool.extend(pts(&RayInterval::new(bf.w.clone(), bf.w1.clone())?));
    let mut p_pool = vec![bf.z.clone(), bf.z1.clone(), u.clone()];
    p_pool.extend(pts(&RayInterval::new(bf.z.clone(), bf.z1.clone())?));
    for pool in [&mut u_pool, &mut p_pool] {
        pool.sort_by_key(|r| r.to_string());
        pool.dedup();
    }

    let table = fr.sector_table(u_pool, p_pool)?;
    for (j, r) in table.p_pool.iter().enumerate() {
        println!("P[{j}] = {r}");
    }
    for (i, r) in table.u_pool.iter().enumerate() {
        let row: String = table.member[i]
            .iter()
            .map(|&m| if m { '#' } else { '.' })
            .collect();
        println!("  {row}  {r}");
    }
    let all_u: BTreeSet<usize> = (0..table.u_pool.len()).collect();
    let l = table.galois_l(&all_u);
    let s = table.galois_s(&l);
    println!("L(U_pool) = {l:?}");
    println!("S(L(U_pool)) = {s:?}");
    println!("L(S(L(U_pool))) = L(U_pool): {}", table.galois_l(&s) == l);
    Ok(())
}
