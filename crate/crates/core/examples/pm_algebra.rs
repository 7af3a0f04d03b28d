//! Piecewise monomial functions on `[0, ∞]`.
//!
//! `cargo run --example pm_algebra`

use troprays::pmfunc::{
    compare, compose, has_glen, pm_add, pm_div, pm_min, pm_mul, restrict, PmFunction,
};
use troprays::TropValue;

fn show(name: &str, f: &PmFunction) {
    let segs: Vec<String> = f.segments().iter().map(|m| m.to_string()).collect();
    let cuts: Vec<String> = f.breakpoints().iter().map(|b| b.to_string()).collect();
    println!("{name}: {} | cuts {}", segs.join(", "), cuts.join(" "));
}

fn main() -> troprays::Result<()> {
    let t = TropValue::t;
    // F = t⁴ + λ², G = t² λ + e.
    let f = PmFunction::polynomial(&[(t(4), 0), (t(0), 2)]);
    let g = PmFunction::polynomial(&[(t(2), 1), (t(0), 0)]);
    show("F", &f);
    show("G", &g);
    show("F + G", &pm_add(&f, &g));
    show("F ∧ G", &pm_min(&f, &g));
    let lhs = pm_mul(&pm_add(&f, &g), &pm_min(&f, &g));
    let rhs = pm_mul(&f, &g);
    println!("(F+G)(F∧G) = FG: {}", lhs == rhs);

    for pc in compare(&f, &g) {
        let s = match pc.label {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        println!(
            "  F {s} G on {}{}, {}{}",
            if pc.lo_closed { "[" } else { "]" },
            pc.lo,
            pc.hi,
            if pc.hi_closed { "]" } else { "[" }
        );
    }

    // A quotient with a dip: (t⁴ + λ²) / (t⁴ + t⁵λ + λ²).
    let num = PmFunction::polynomial(&[(t(4), 0), (t(0), 2)]);
    let den = PmFunction::polynomial(&[(t(4), 0), (t(5), 1), (t(0), 2)]);
    let h = pm_div(&num, &den)?;
    show("H", &h);
    if let Some((a, b)) = has_glen(&h) {
        println!("H has a glen on [{a}, {b}]");
    }

    show("F restricted to [t⁻¹, t³]", &restrict(&f, &t(-1), &t(3))?);
    show("F ∘ G", &compose(&f, &g)?);
    println!(
        "JSON: {}",
        serde_json::to_string(&g).expect("pm functions serialize")
    );
    Ok(())
}
