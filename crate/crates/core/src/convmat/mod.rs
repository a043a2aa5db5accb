//! Convolution matrices for finite-interval bases.
//!
//! The stable builders fill the matrix in four passes: column 0 from the
//! kernel's antiderivative, the lower band by forward recurrence, the upper
//! band of rows `M+1..` by the symmetry relation, and the dense top rows by
//! the recurrence run backwards from padded columns, down to row 0.

mod family;
mod naive;
mod storage;
mod tables;

pub use naive::build_chebyshev_naive;
pub use storage::ConvMatrix;
pub use tables::{gegenbauer_s, jacobi_tables, RecurrenceTables};

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::series::indefinite_integral_cheb;

use family::Family;

pub(crate) fn check_kernel(a: &[f64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Argument("kernel needs at least one coefficient".into()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("kernel has non-finite coefficients".into()));
    }
    Ok(())
}

/// Column 0 of the Chebyshev matrix: the antiderivative of `a` from `-1`.
pub fn cheb_column0(a: &[f64]) -> Result<Vec<f64>> {
    indefinite_integral_cheb(a)
}

pub fn build_chebyshev(a: &[f64], n: usize) -> Result<ConvMatrix> {
    check_kernel(a)?;
    build_stable(&family::Chebyshev, a, n, false)
}

/// Legendre matrix; banded on both sides with bandwidth `M+1`.
pub fn build_legendre(a: &[f64], n: usize) -> Result<ConvMatrix> {
    check_kernel(a)?;
    let fam = family::Gegenbauer::legendre(n + 2 * a.len() + 2);
    build_stable(&fam, a, n, true)
}

pub fn build_gegenbauer(a: &[f64], lambda: f64, n: usize) -> Result<ConvMatrix> {
    BasisSpec::gegenbauer(lambda)?;
    check_kernel(a)?;
    let fam = family::Gegenbauer::new(lambda, n + 2 * a.len() + 2);
    build_stable(&fam, a, n, false)
}

pub fn build_jacobi(a: &[f64], alpha: f64, beta: f64, n: usize) -> Result<ConvMatrix> {
    BasisSpec::jacobi(alpha, beta)?;
    check_kernel(a)?;
    let fam = family::Jacobi::new(alpha, beta, n + 2 * a.len() + 2)?;
    build_stable(&fam, a, n, false)
}

/// Dispatches on `basis`; Laguerre has its own implicit matrix.
pub fn build(basis: &BasisSpec, a: &[f64], n: usize) -> Result<ConvMatrix> {
    match *basis {
        BasisSpec::Chebyshev => build_chebyshev(a, n),
        BasisSpec::Legendre => build_legendre(a, n),
        BasisSpec::Gegenbauer { lambda } => build_gegenbauer(a, lambda, n),
        BasisSpec::Jacobi { alpha, beta } => build_jacobi(a, alpha, beta, n),
        BasisSpec::WeightedLaguerre { .. } => Err(Error::UnsupportedBasis(basis.to_string())),
    }
}

/// Factor `rho` with `R[n, k] = rho * R[k, n]` inside the symmetric block.
pub fn symmetry_ratio(basis: &BasisSpec, n: usize, k: usize) -> Result<f64> {
    basis.validate()?;
    if n == k {
        return Ok(1.0);
    }
    let (r, c) = (n.min(k), n.max(k));
    // rho(r, c) maps R[c, r] to R[r, c]
    let rho = match *basis {
        BasisSpec::Chebyshev => {
            if r == 0 {
                return Err(Error::Argument("Chebyshev symmetry needs n, k >= 1".into()));
            }
            family::Chebyshev.mirror(r, c, 1.0)
        }
        BasisSpec::Legendre => family::Gegenbauer::legendre(0).mirror(r, c, 1.0),
        BasisSpec::Gegenbauer { lambda } => family::Gegenbauer::new(lambda, 0).mirror(r, c, 1.0),
        BasisSpec::Jacobi { alpha, beta } => (r + 1..=c)
            .map(|j| family::Jacobi::mirror_step(alpha, beta, j))
            .product(),
        BasisSpec::WeightedLaguerre { .. } => {
            return Err(Error::UnsupportedBasis(basis.to_string()))
        }
    };
    Ok(if n < k { rho } else { 1.0 / rho })
}

fn boundary_row(r: &ConvMatrix, weights: &[f64], n: usize) -> f64 {
    -r.column_rows(n).map(|j| weights[j] * r.get(j, n)).sum::<f64>() / weights[0]
}

fn build_stable(fam: &impl Family, a: &[f64], n: usize, banded: bool) -> Result<ConvMatrix> {
    let basis = fam.basis();
    let m = a.len() - 1;
    // padding columns feed the backward sweep over the top rows
    let p = n + m + 1;
    let weights = basis.values_at_minus_one(2 * m + 3)?;
    let mut r = ConvMatrix::zeros(basis, m, p, banded);

    let col0 = fam.column0(a);
    for (k, &v) in col0.iter().enumerate().skip(1) {
        r.set(k, 0, v);
    }
    let v = boundary_row(&r, &weights, 0);
    r.set(0, 0, v);

    // lower band
    for c in 0..p {
        for k in (c + 1).max(1)..=c + m + 2 {
            let v = fam.forward(|i, j| r.get(i, j), k, c);
            r.set(k, c + 1, v);
        }
    }

    // upper band below the dense rows
    for row in m + 1..p {
        let mut rho = 1.0;
        for c in row + 1..=(row + m + 1).min(p) {
            rho = fam.mirror(row, c, rho);
            let v = rho * r.get(c, row);
            r.set(row, c, v);
        }
    }

    // dense rows, bottom-up
    for row in (1..=m).rev() {
        let mut hi = n + row;
        if banded {
            hi = hi.min(row + m + 1);
        }
        for c in row + 1..=hi {
            let v = fam.backward(|i, j| r.get(i, j), row + 1, c);
            r.set(row, c, v);
        }
    }

    // row 0: boundary condition for the first two columns, then the
    // recurrence at k = 1 solved for the row above
    let last = if banded { n.min(m + 1) } else { n };
    for c in 1..=last {
        let v = if c >= 2 {
            fam.backward(|i, j| r.get(i, j), 1, c)
        } else {
            boundary_row(&r, &weights, c)
        };
        r.set(0, c, v);
    }
    Ok(r.truncated(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    fn pseudo(m: usize, seed: u64) -> Vec<f64> {
        crate::rng::random_kernel(m, seed)
    }

    #[test]
    fn chebyshev_unit_kernel() {
        let r = build_chebyshev(&[1.0], 2).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (4, 3));
        assert_close(&r.column(0), &[1.0, 1.0, 0.0, 0.0], 1e-16);
        assert_close(&r.column(1), &[-0.25, 0.0, 0.25, 0.0], 1e-16);
        assert_close(&r.column(2), &[-1.0 / 3.0, -0.5, 0.0, 1.0 / 6.0], 1e-16);
        let c = r.apply(&[0.0, 0.0, 1.0]).unwrap();
        assert_close(&c, &[-1.0 / 3.0, -0.5, 0.0, 1.0 / 6.0], 1e-16);
    }

    #[test]
    fn column0_examples() {
        assert_eq!(cheb_column0(&[1.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(cheb_column0(&[0.0, 1.0]).unwrap(), vec![-0.25, 0.0, 0.25]);
        assert!(cheb_column0(&[]).is_err());
        let a = pseudo(8, 3);
        let r = build_chebyshev(&a, 4).unwrap();
        assert_close(&r.column(0)[..10], &cheb_column0(&a).unwrap(), 1e-16);
    }

    #[test]
    fn legendre_unit_kernel() {
        let r = build_legendre(&[1.0], 1).unwrap();
        assert_close(&r.column(0), &[1.0, 1.0, 0.0], 1e-16);
        assert_close(&r.column(1), &[-1.0 / 3.0, 0.0, 1.0 / 3.0], 1e-16);
    }

    #[test]
    fn gegenbauer_unit_kernel() {
        let r = build_gegenbauer(&[1.0], 2.0, 1).unwrap();
        assert_close(&r.column(0), &[1.0, 0.25, 0.0], 1e-15);
        assert_close(&r.column(1), &[-5.0 / 3.0, 0.0, 1.0 / 6.0], 1e-15);
    }

    #[test]
    fn jacobi_unit_kernel() {
        let r = build_jacobi(&[1.0], 2.0, 1.5, 0).unwrap();
        assert_close(&r.column(0), &[10.0 / 11.0, 4.0 / 11.0], 1e-15);
    }

    #[test]
    fn legendre_is_banded() {
        let r = build_legendre(&pseudo(5, 11), 40).unwrap();
        for k in 0..r.nrows() {
            for n in 0..r.ncols() {
                if k.abs_diff(n) > 6 {
                    assert_eq!(r.get(k, n), 0.0, "({k}, {n})");
                }
            }
        }
    }

    #[test]
    fn special_cases_agree() {
        let a = pseudo(8, 5);
        let l = build_legendre(&a, 40).unwrap();
        let g = build_gegenbauer(&a, 0.5, 40).unwrap();
        let j = build_jacobi(&a, 0.0, 0.0, 40).unwrap();
        for k in 0..l.nrows() {
            for n in 0..l.ncols() {
                assert!((l.get(k, n) - g.get(k, n)).abs() <= 1e-14, "({k},{n})");
                assert!((l.get(k, n) - j.get(k, n)).abs() <= 1e-14, "({k},{n})");
            }
        }
    }

    #[test]
    fn symmetry_ratio_examples() {
        assert_eq!(symmetry_ratio(&BasisSpec::Chebyshev, 5, 5).unwrap(), 1.0);
        assert!((symmetry_ratio(&BasisSpec::Chebyshev, 3, 4).unwrap() + 4.0 / 3.0).abs() < 1e-15);
        assert!(symmetry_ratio(&BasisSpec::Chebyshev, 0, 4).is_err());
        assert!(symmetry_ratio(&BasisSpec::weighted_laguerre(), 1, 2).is_err());
    }

    #[test]
    fn jacobi_ratio_matches_gamma_quotient() {
        use statrs::function::gamma::ln_gamma;
        let (alpha, beta) = (2.0, 1.5);
        let ab = alpha + beta;
        let (n, k) = (3usize, 6usize);
        let (nf, kf) = (n as f64, k as f64);
        // R[n,k] = (-1)^{n+k} (ab+2n+1)/(ab+2k+1) (n+a+1)_{k-n} (n+b+1)_{k-n} / (n+ab+1)_{k-n}^2 R[k,n]
        let lnpoch = |x: f64, m: f64| ln_gamma(x + m) - ln_gamma(x);
        let d = kf - nf;
        let quotient = (ab + 2.0 * nf + 1.0) / (ab + 2.0 * kf + 1.0)
            * (lnpoch(nf + alpha + 1.0, d) + lnpoch(nf + beta + 1.0, d)
                - 2.0 * lnpoch(nf + ab + 1.0, d))
            .exp()
            * -1.0;
        let product = symmetry_ratio(&BasisSpec::Jacobi { alpha, beta }, n, k).unwrap();
        assert!((product - quotient).abs() <= 1e-13 * quotient.abs());
        let back = symmetry_ratio(&BasisSpec::Jacobi { alpha, beta }, k, n).unwrap();
        assert!((back * product - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_block_holds() {
        let bases = [
            BasisSpec::Chebyshev,
            BasisSpec::Legendre,
            BasisSpec::gegenbauer(2.0).unwrap(),
            BasisSpec::jacobi(2.0, 1.5).unwrap(),
        ];
        for basis in bases {
            let m = 4;
            let r = build(&basis, &pseudo(m, 2), 60).unwrap();
            for k in m + 1..=60 {
                for n in m + 1..=60 {
                    let rho = symmetry_ratio(&basis, n, k).unwrap();
                    let want = rho * r.get(k, n);
                    assert!(
                        (r.get(n, k) - want).abs() <= 1e-12 * r.get(k, n).abs().max(1.0),
                        "{basis} ({n},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(build_chebyshev(&[], 3), Err(Error::Argument(_))));
        assert!(matches!(build_gegenbauer(&[1.0], 0.0, 3), Err(Error::Parameter(_))));
        assert!(matches!(build_jacobi(&[1.0], -0.5, -0.5, 3), Err(Error::Degenerate { .. })));
        assert!(matches!(
            build(&BasisSpec::weighted_laguerre(), &[1.0], 3),
            Err(Error::UnsupportedBasis(_))
        ));
    }
}
