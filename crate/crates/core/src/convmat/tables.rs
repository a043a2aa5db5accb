use crate::error::{Error, Result};

/// `S_n^(lambda) = 2 (-1)^(n+1) (lambda + n) (2 lambda - 1)_n / (n+1)!`.
pub fn gegenbauer_s(lambda: f64, n: usize) -> f64 {
    *gegenbauer_s_table(lambda, n).last().expect("nonempty")
}

/// `S_0 ..= S_nmax` for the Gegenbauer recurrence.
pub(crate) fn gegenbauer_s_table(lambda: f64, nmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    // q = (2 lambda - 1)_n / (n+1)!
    let mut q = 1.0;
    for n in 0..=nmax {
        if n > 0 {
            q *= (2.0 * lambda - 2.0 + n as f64) / (n as f64 + 1.0);
        }
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        out.push(2.0 * sign * (lambda + n as f64) * q);
    }
    out
}

/// Precomputed coefficients of the Jacobi antiderivative recurrence
/// `int P_n = A_{n+1} P_{n+1} + B_n P_n + C_{n-1} P_{n-1}` and the
/// boundary terms `S_n`.
///
/// `a[0]` is unused. `B_0` multiplies a constant and is fixed to zero; `S_0`
/// is taken in the matching gauge `A_1 P_1(-1)`, which keeps the column
/// recurrence well defined on the line `alpha + beta = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTables {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub s: Vec<f64>,
}

pub fn jacobi_tables(alpha: f64, beta: f64, nmax: usize) -> Result<RecurrenceTables> {
    let ab = alpha + beta;
    if (ab + 1.0).abs() <= crate::basis::JACOBI_DEGENERACY_TOL {
        return Err(Error::Degenerate { n: 1 });
    }
    let mut a = vec![0.0; nmax + 2];
    let mut b = vec![0.0; nmax + 1];
    let mut c = vec![0.0; nmax + 1];
    let mut s = vec![0.0; nmax + 1];

    a[1] = 2.0 / (ab + 2.0);
    for (j, slot) in a.iter_mut().enumerate().skip(2) {
        let jf = j as f64;
        *slot = 2.0 * (ab + jf) / ((ab + 2.0 * jf - 1.0) * (ab + 2.0 * jf));
    }
    for (j, slot) in b.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        *slot = 2.0 * (alpha - beta) / ((ab + 2.0 * jf) * (ab + 2.0 * jf + 2.0));
    }
    for (j, slot) in c.iter_mut().enumerate() {
        let jf = j as f64;
        *slot = -2.0 * (alpha + jf + 1.0) * (beta + jf + 1.0)
            / ((ab + jf + 1.0) * (ab + 2.0 * jf + 2.0) * (ab + 2.0 * jf + 3.0));
    }

    s[0] = -2.0 * (beta + 1.0) / (ab + 2.0);
    // t = (beta)_{n+1} / (n+1)!
    let mut t = beta;
    for n in 1..=nmax {
        let nf = n as f64;
        t *= (beta + nf) / (nf + 1.0);
        let denom = ab + nf;
        if denom.abs() < 1e-12 {
            return Err(Error::Degenerate { n });
        }
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        s[n] = 2.0 * sign * t / denom;
    }
    Ok(RecurrenceTables { a, b, c, s })
}
