//! Build the Chebyshev convolution matrix for a random kernel and compare
//! it with the quadrature oracle.

use std::time::Instant;

use voltconv::convmat::build_chebyshev;
use voltconv::oracle::{compare_entrywise, conv_coeff_columns};
use voltconv::rng::random_kernel;
use voltconv::{BasisSpec, PolySeries};

fn main() -> voltconv::Result<()> {
    let (m, n) = (10, 50);
    let a = random_kernel(m, 1);
    let t = Instant::now();
    let r = build_chebyshev(&a, n)?;
    let secs = t.elapsed().as_secs_f64();
    let f = PolySeries::canonical(BasisSpec::Chebyshev, a)?;
    let report = compare_entrywise(&r, &conv_coeff_columns(&f, n)?)?;
    println!("{} x {} matrix built in {secs:.1e} s", r.nrows(), r.ncols());
    println!("max entrywise error {:.2e}", report.max_abs);
    println!("R[0..4, 0..4]:");
    for k in 0..4 {
        let row: Vec<String> = (0..4).map(|c| format!("{:+.6}", r.get(k, c))).collect();
        println!("  {}", row.join("  "));
    }
    Ok(())
}
