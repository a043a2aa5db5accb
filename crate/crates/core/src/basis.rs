//! Polynomial families and their three-term recurrences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to reject the Jacobi line `alpha + beta = -1`.
pub const JACOBI_DEGENERACY_TOL: f64 = 1e-12;

/// Orthogonal-polynomial family a series is expanded in.
///
/// `WeightedLaguerre { rate }` is the half-line basis `exp(-rate x) L_n(x)`.
/// The conventional choice is `rate = 1/2`; any positive rate keeps the
/// Laguerre convolution identity intact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BasisSpec {
    Chebyshev,
    Legendre,
    Gegenbauer {
        lambda: f64,
    },
    Jacobi {
        alpha: f64,
        beta: f64,
    },
    WeightedLaguerre {
        #[serde(default = "default_rate")]
        rate: f64,
    },
}

fn default_rate() -> f64 {
    0.5
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSpec::Chebyshev => write!(f, "chebyshev"),
            BasisSpec::Legendre => write!(f, "legendre"),
            BasisSpec::Gegenbauer { lambda } => write!(f, "gegenbauer(lambda={lambda})"),
            BasisSpec::Jacobi { alpha, beta } => write!(f, "jacobi(alpha={alpha}, beta={beta})"),
            BasisSpec::WeightedLaguerre { rate } => write!(f, "weighted-laguerre(rate={rate})"),
        }
    }
}

impl BasisSpec {
    pub fn gegenbauer(lambda: f64) -> Result<Self> {
        let b = BasisSpec::Gegenbauer { lambda };
        b.validate()?;
        Ok(b)
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        let b = BasisSpec::Jacobi { alpha, beta };
        b.validate()?;
        Ok(b)
    }

    /// The conventional `exp(-x/2) L_n(x)` basis.
    pub fn weighted_laguerre() -> Self {
        BasisSpec::WeightedLaguerre { rate: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BasisSpec::Chebyshev | BasisSpec::Legendre => Ok(()),
            BasisSpec::Gegenbauer { lambda } => {
                if !(lambda.is_finite() && lambda > -0.5 && lambda != 0.0) {
                    return Err(Error::Parameter(format!(
                        "Gegenbauer lambda must satisfy lambda > -1/2 and lambda != 0, got {lambda}"
                    )));
                }
                Ok(())
            }
            BasisSpec::Jacobi { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0) {
                    return Err(Error::Parameter(format!(
                        "Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
                    )));
                }
                if (alpha + beta + 1.0).abs() <= JACOBI_DEGENERACY_TOL {
                    return Err(Error::Degenerate { n: 1 });
                }
                Ok(())
            }
            BasisSpec::WeightedLaguerre { rate } => {
                if !(rate.is_finite() && rate > 0.0) {
                    return Err(Error::Parameter(format!(
                        "Laguerre weight rate must be positive, got {rate}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn is_finite_interval(&self) -> bool {
        !matches!(self, BasisSpec::WeightedLaguerre { .. })
    }

    /// Same polynomial family, ignoring parameters.
    pub fn same_family(&self, other: &BasisSpec) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// Coefficients `(a, b, c)` of `p_{n+1}(x) = (a x + b) p_n(x) - c p_{n-1}(x)`.
    ///
    /// For the Laguerre family these are the coefficients of the unweighted
    /// `L_n`.
    pub fn recurrence(&self, n: usize) -> (f64, f64, f64) {
        let nf = n as f64;
        match *self {
            BasisSpec::Chebyshev => {
                if n == 0 {
                    (1.0, 0.0, 0.0)
                } else {
                    (2.0, 0.0, 1.0)
                }
            }
            BasisSpec::Legendre => ((2.0 * nf + 1.0) / (nf + 1.0), 0.0, nf / (nf + 1.0)),
            BasisSpec::Gegenbauer { lambda } => (
                2.0 * (nf + lambda) / (nf + 1.0),
                0.0,
                (nf + 2.0 * lambda - 1.0) / (nf + 1.0),
            ),
            BasisSpec::Jacobi { alpha, beta } => {
                let ab = alpha + beta;
                if n == 0 {
                    return ((ab + 2.0) / 2.0, (alpha - beta) / 2.0, 0.0);
                }
                let s = 2.0 * nf + ab;
                let d = 2.0 * (nf + 1.0) * (nf + ab + 1.0) * s;
                (
                    (s + 1.0) * (s + 2.0) * s / d,
                    (s + 1.0) * (alpha * alpha - beta * beta) / d,
                    2.0 * (nf + alpha) * (nf + beta) * (s + 2.0) / d,
                )
            }
            BasisSpec::WeightedLaguerre { .. } => (
                -1.0 / (nf + 1.0),
                (2.0 * nf + 1.0) / (nf + 1.0),
                nf / (nf + 1.0),
            ),
        }
    }

    /// `p_0(x), ..., p_nmax(x)` by forward recurrence (unweighted for Laguerre).
    pub fn values_at(&self, x: f64, nmax: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(nmax + 1);
        out.push(1.0);
        if nmax == 0 {
            return out;
        }
        let (a, b, _) = self.recurrence(0);
        out.push(a * x + b);
        for n in 1..nmax {
            let (a, b, c) = self.recurrence(n);
            let next = (a * x + b) * out[n] - c * out[n - 1];
            out.push(next);
        }
        out
    }

    /// `p_n(x)` alone, by forward recurrence.
    pub fn value_at(&self, x: f64, n: usize) -> f64 {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for j in 0..n {
            let (a, b, c) = self.recurrence(j);
            let next = (a * x + b) * cur - c * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `p_0(-1), ..., p_nmax(-1)`, each accumulated as a running product.
    pub fn values_at_minus_one(&self, nmax: usize) -> Result<Vec<f64>> {
        let shift = match *self {
            BasisSpec::Chebyshev | BasisSpec::Legendre => None,
            BasisSpec::Gegenbauer { lambda } => Some(2.0 * lambda),
            BasisSpec::Jacobi { beta, .. } => Some(beta + 1.0),
            BasisSpec::WeightedLaguerre { .. } => {
                return Err(Error::UnsupportedBasis(self.to_string()))
            }
        };
        let mut out = Vec::with_capacity(nmax + 1);
        let mut v = 1.0;
        out.push(v);
        for j in 1..=nmax {
            // (s)_j / j! = (s)_{j-1} / (j-1)! * (s + j - 1) / j
            v *= match shift {
                None => -1.0,
                Some(s) => -(s + j as f64 - 1.0) / j as f64,
            };
            out.push(v);
        }
        Ok(out)
    }
}

/// `p_n(-1)` for a finite-interval basis.
pub fn basis_value_at_minus_one(basis: &BasisSpec, n: usize) -> Result<f64> {
    Ok(*basis.values_at_minus_one(n)?.last().expect("nonempty"))
}

/// Ratio `(x)_n / n!` accumulated one factor at a time.
pub fn pochhammer_over_factorial(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (x + j as f64) / (j as f64 + 1.0))
}
