//! Column recurrences of the convolution matrix for each finite-interval basis.

use crate::basis::BasisSpec;
use crate::error::Result;
use crate::series::indefinite_integral_cheb;

use super::tables::{gegenbauer_s_table, jacobi_tables, RecurrenceTables};

/// One family of column recurrences.
///
/// `get(k, n)` reads an already computed entry. Entries in column `-1` are
/// never requested; callers treat them as zero.
pub(crate) trait Family {
    fn basis(&self) -> BasisSpec;

    /// Column 0 for rows `1..=M+1`; index 0 is left for the boundary row.
    fn column0(&self, a: &[f64]) -> Vec<f64>;

    /// `R[k, n+1]` for `k >= 1`.
    fn forward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64;

    /// `R[k-1, n]` for `k >= 1`, `n >= 2`.
    fn backward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64;

    /// Factor `rho` with `R[r, c] = rho * R[c, r]` for `c > r >= 1`, given
    /// `prev` = the factor for `(r, c-1)` (1 when `c - 1 == r`).
    fn mirror(&self, r: usize, c: usize, prev: f64) -> f64;
}

#[inline]
fn alt(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub(crate) struct Chebyshev;

impl Family for Chebyshev {
    fn basis(&self) -> BasisSpec {
        BasisSpec::Chebyshev
    }

    fn column0(&self, a: &[f64]) -> Vec<f64> {
        indefinite_integral_cheb(a).expect("nonempty kernel")
    }

    fn forward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let kf = k as f64;
        // doubled coefficient on the T_0 row
        let p = if k == 1 { 2.0 } else { 1.0 };
        match n {
            0 => -get(k, 0) + p / (2.0 * kf) * get(k - 1, 0) - get(k + 1, 0) / (2.0 * kf),
            1 => get(k, 0) + 2.0 * p / kf * get(k - 1, 1) - 2.0 / kf * get(k + 1, 1),
            _ => {
                let nf = n as f64;
                2.0 * alt(n) / (nf - 1.0) * get(k, 0)
                    + (nf + 1.0) / (nf - 1.0) * get(k, n - 1)
                    + p * (nf + 1.0) / kf * get(k - 1, n)
                    - (nf + 1.0) / kf * get(k + 1, n)
            }
        }
    }

    fn backward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let kf = k as f64;
        let nf = n as f64;
        let v = -2.0 * kf * alt(n) / (nf * nf - 1.0) * get(k, 0) - kf / (nf - 1.0) * get(k, n - 1)
            + kf / (nf + 1.0) * get(k, n + 1)
            + get(k + 1, n);
        // halved on the T_0 row
        if k == 1 {
            0.5 * v
        } else {
            v
        }
    }

    fn mirror(&self, r: usize, c: usize, _prev: f64) -> f64 {
        alt(r + c) * c as f64 / r as f64
    }
}

/// Gegenbauer family; with `lambda = 1/2` and the Legendre tag this is the
/// Legendre four-term recurrence plus the `S_0` correction in column 1.
pub(crate) struct Gegenbauer {
    basis: BasisSpec,
    lambda: f64,
    s: Vec<f64>,
}

impl Gegenbauer {
    pub(crate) fn new(lambda: f64, nmax: usize) -> Self {
        Gegenbauer {
            basis: BasisSpec::Gegenbauer { lambda },
            lambda,
            s: gegenbauer_s_table(lambda, nmax),
        }
    }

    pub(crate) fn legendre(nmax: usize) -> Self {
        Gegenbauer {
            basis: BasisSpec::Legendre,
            ..Gegenbauer::new(0.5, nmax)
        }
    }
}

impl Family for Gegenbauer {
    fn basis(&self) -> BasisSpec {
        self.basis
    }

    fn column0(&self, a: &[f64]) -> Vec<f64> {
        let m = a.len() - 1;
        let l = self.lambda;
        let at = |j: usize| a.get(j).copied().unwrap_or(0.0);
        let mut out = vec![0.0; m + 2];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            let kf = k as f64;
            *slot = at(k - 1) / (2.0 * (kf + l - 1.0)) - at(k + 1) / (2.0 * (kf + l + 1.0));
        }
        out
    }

    fn forward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let kf = k as f64;
        let g = n as f64 + self.lambda;
        let mut v = self.s[n] * get(k, 0) + g / (kf + self.lambda - 1.0) * get(k - 1, n)
            - g / (kf + self.lambda + 1.0) * get(k + 1, n);
        if n > 0 {
            v += get(k, n - 1);
        }
        v
    }

    fn backward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let km = k as f64 + self.lambda - 1.0;
        let kp = k as f64 + self.lambda + 1.0;
        km / (n as f64 + self.lambda) * (get(k, n + 1) - self.s[n] * get(k, 0) - get(k, n - 1))
            + km / kp * get(k + 1, n)
    }

    fn mirror(&self, r: usize, c: usize, _prev: f64) -> f64 {
        alt(r + c) * (r as f64 + self.lambda) / (c as f64 + self.lambda)
    }
}

pub(crate) struct Jacobi {
    alpha: f64,
    beta: f64,
    t: RecurrenceTables,
}

impl Jacobi {
    pub(crate) fn new(alpha: f64, beta: f64, nmax: usize) -> Result<Self> {
        Ok(Jacobi {
            alpha,
            beta,
            t: jacobi_tables(alpha, beta, nmax)?,
        })
    }

    /// `rho(r, c) / rho(r, c-1)`.
    pub(crate) fn mirror_step(alpha: f64, beta: f64, c: usize) -> f64 {
        let ab = alpha + beta;
        let cf = c as f64;
        -(ab + 2.0 * cf - 1.0) / (ab + 2.0 * cf + 1.0) * (cf + alpha) * (cf + beta)
            / ((cf + ab) * (cf + ab))
    }
}

impl Family for Jacobi {
    fn basis(&self) -> BasisSpec {
        BasisSpec::Jacobi {
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    fn column0(&self, a: &[f64]) -> Vec<f64> {
        let m = a.len() - 1;
        let at = |j: usize| a.get(j).copied().unwrap_or(0.0);
        let t = &self.t;
        let mut out = vec![0.0; m + 2];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = t.a[k] * at(k - 1) + t.b[k] * at(k) + t.c[k] * at(k + 1);
        }
        out
    }

    fn forward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let t = &self.t;
        let mut v = (t.b[k] - t.b[n]) * get(k, n)
            + t.a[k] * get(k - 1, n)
            + t.c[k] * get(k + 1, n)
            + t.s[n] * get(k, 0);
        if n > 0 {
            v -= t.c[n - 1] * get(k, n - 1);
        }
        v / t.a[n + 1]
    }

    fn backward(&self, get: impl Fn(usize, usize) -> f64, k: usize, n: usize) -> f64 {
        let t = &self.t;
        ((t.b[n] - t.b[k]) * get(k, n) + t.c[n - 1] * get(k, n - 1) + t.a[n + 1] * get(k, n + 1)
            - t.c[k] * get(k + 1, n)
            - t.s[n] * get(k, 0))
            / t.a[k]
    }

    fn mirror(&self, _r: usize, c: usize, prev: f64) -> f64 {
        prev * Jacobi::mirror_step(self.alpha, self.beta, c)
    }
}
