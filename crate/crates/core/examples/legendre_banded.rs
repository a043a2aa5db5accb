//! The Legendre matrix is banded, and its lower part mirrors the upper part.

use voltconv::convmat::{build, symmetry_ratio};
use voltconv::rng::random_kernel;
use voltconv::BasisSpec;

fn main() -> voltconv::Result<()> {
    let (m, n) = (5, 40);
    let r = build(&BasisSpec::Legendre, &random_kernel(m, 1), n)?;
    println!("banded storage: {}", r.is_banded());
    for k in 0..12 {
        let row: String = (0..=20).map(|c| if r.get(k, c) == 0.0 { '.' } else { '#' }).collect();
        println!("  {row}");
    }
    let (k, c) = (10, 14);
    let rho = symmetry_ratio(&BasisSpec::Legendre, c, k)?;
    println!("R[{c}, {k}] = {:+.15e}", r.get(c, k));
    println!("rho R[{k}, {c}] = {:+.15e}", rho * r.get(k, c));
    Ok(())
}
