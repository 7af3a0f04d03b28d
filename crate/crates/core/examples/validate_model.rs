//! Loading models from JSON and checking the companion identity.
//!
//! `cargo run --example validate_model [model.json]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troprays::cli::io::load_model;
use troprays::quadspace::GramData;
use troprays::TropValue;

const BUILTIN: &str = r#"{"dim": 2, "q_diag": ["0", "0"], "b": [["0", "2"], ["2", "0"]]}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => BUILTIN.to_string(),
    };
    let model = load_model(&text)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let report = model.gram.validate(500, &mut rng);
    println!("sha256 {}", model.sha256);
    println!("{report:#?}");
    let p = model.pair()?;
    println!("anisotropic: {}", p.is_anisotropic());

    // A companion that is too small off the diagonal breaks q(x+y) = q(x)+q(y)+b(x,y).
    let t = |n| TropValue::t(n);
    let bad = GramData {
        q_diag: vec![t(0), t(0)],
        q_offdiag: vec![vec![t(0), t(2)], vec![t(2), t(0)]],
        b: vec![vec![t(0), t(1)], vec![t(1), t(0)]],
    };
    let r = bad.validate(100, &mut rng);
    println!("mismatched companion passes: {}", r.passed());
    if let Some(f) = r.first_failure {
        println!("  {f}");
    }
    Ok(())
}
