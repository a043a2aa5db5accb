//! A large build, checked at sampled columns and points.

use std::time::Instant;

use voltconv::convmat::build_chebyshev;
use voltconv::oracle::pointwise_check;
use voltconv::rng::random_kernel;
use voltconv::{BasisSpec, PolySeries};

fn main() -> voltconv::Result<()> {
    let (m, n) = (1000, 5000);
    let a = random_kernel(m, 1);
    let t = Instant::now();
    let r = build_chebyshev(&a, n)?;
    println!("M = {m}, N = {n}: built in {:.2} s", t.elapsed().as_secs_f64());
    let f = PolySeries::canonical(BasisSpec::Chebyshev, a)?;
    let report = pointwise_check(&r, &f, 50, 7)?;
    println!("50 sampled points, max error {:.2e}", report.max_abs);
    Ok(())
}
