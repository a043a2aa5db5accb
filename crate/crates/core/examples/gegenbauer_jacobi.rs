//! Gegenbauer and Jacobi builds against the coefficient oracle.

use voltconv::convmat::build;
use voltconv::oracle::{compare_entrywise, conv_coeff_columns};
use voltconv::rng::random_kernel;
use voltconv::{BasisSpec, PolySeries};

fn main() -> voltconv::Result<()> {
    let bases = [
        BasisSpec::Gegenbauer { lambda: 0.5 },
        BasisSpec::Gegenbauer { lambda: 2.0 },
        BasisSpec::Jacobi { alpha: 2.0, beta: 1.5 },
        BasisSpec::Jacobi { alpha: -0.5, beta: 0.5 },
    ];
    let (m, n) = (50, 250);
    for basis in bases {
        let a = random_kernel(m, 1);
        let r = build(&basis, &a, n)?;
        let f = PolySeries::canonical(basis, a)?;
        let report = compare_entrywise(&r, &conv_coeff_columns(&f, n)?)?;
        let size = r.to_dense().amax();
        println!("{basis:<28} max error {:.2e}  largest entry {size:.2e}", report.max_abs);
    }
    Ok(())
}
