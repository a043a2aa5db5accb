use nalgebra::DMatrix;

use crate::basis::BasisSpec;
use crate::error::Result;

use super::family::{Chebyshev, Family};

/// Chebyshev matrix built column by column with the forward recurrence on
/// every row and no symmetry pass.
///
/// Errors grow without bound above the diagonal; this exists to show it.
/// Non-finite entries are left in place.
pub fn build_chebyshev_naive(a: &[f64], n: usize) -> Result<DMatrix<f64>> {
    super::check_kernel(a)?;
    let m = a.len() - 1;
    let rows = m + n + 2;
    let weights = BasisSpec::Chebyshev.values_at_minus_one(rows)?;
    let mut r = DMatrix::<f64>::zeros(rows, n + 1);
    let col0 = Chebyshev.column0(a);
    for (k, &v) in col0.iter().enumerate() {
        r[(k, 0)] = v;
    }
    for c in 0..n {
        for k in 1..(c + m + 3).min(rows) {
            let v = Chebyshev.forward(
                |i, j| if i < rows { r[(i, j)] } else { 0.0 },
                k,
                c,
            );
            r[(k, c + 1)] = v;
        }
        let s: f64 = (1..rows).map(|j| weights[j] * r[(j, c + 1)]).sum();
        r[(0, c + 1)] = -s;
    }
    Ok(r)
}
