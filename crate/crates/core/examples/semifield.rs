//! Arithmetic in the bipotent semifield of values `t^r`, `r` rational.
//!
//! `cargo run --example semifield`

use troprays::semifield::{interior_point, TropValue};

fn main() -> troprays::Result<()> {
    let a = TropValue::t(3);
    let b: TropValue = "-5/2".parse()?;
    println!("a = {a}, b = {b}");
    println!("a + b = {} (the larger one)", a.plus(&b));
    println!("a · b = {}", a.times(&b)?);
    println!("a / b = {}", a.over(&b)?);
    println!("cube root of b = {}", b.root(3));
    println!("b^4 = {}", b.powi(4));
    println!("b^0 = {}", b.powi(0));

    let zero = TropValue::Zero;
    let inf = TropValue::Infinity;
    println!("0 + a = {}", zero.plus(&a));
    println!("0 · a = {}", zero.times(&a)?);
    println!("a · ∞ = {}", a.times(&inf)?);
    match zero.times(&inf) {
        Ok(v) => println!("0 · ∞ = {v}"),
        Err(e) => println!("0 · ∞: {e}"),
    }
    println!(
        "a point strictly between b and a: {}",
        interior_point(&b, &a)
    );
    println!(
        "JSON form of a: {}",
        serde_json::to_string(&a).expect("values serialize")
    );
    Ok(())
}
