//! Interval-aware convolution of two series, and second-kind Volterra
//! equations of convolution type.
//!
//! For `f` on `[a, b]` and `g` on `[c, c + (b - a)]`,
//!
//! ```text
//! (f * g)(x) = int_c^{x-a} f(x - t) g(t) dt,    x in [a + c, b + c].
//! ```
//!
//! [`solve_second_kind`] reads the convolution of kernel and unknown back on
//! the shared domain `[a, b]`, so it solves
//! `u(x) = s(x) + int_a^x f(x - t + a) u(t) dt`. With `a = 0` this is the
//! usual renewal form `u = s + f * u`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::convmat::{build, ConvMatrix};
use crate::error::{Error, Result};
use crate::laguerre::apply_laguerre;
use crate::series::{Domain, PolySeries};

/// Relative pivot size below which the solve reports a singular system.
pub const SINGULAR_PIVOT: f64 = 1e-14;

fn check_lengths(f: Domain, g: Domain) -> Result<()> {
    let (lf, lg) = (f.length(), g.length());
    if ((lf - lg) / lf).abs() > 1e-14 {
        return Err(Error::Contract(format!(
            "interval lengths differ: {lf} vs {lg}"
        )));
    }
    Ok(())
}

/// Convolution of two series in the same basis.
///
/// The result has degree `deg f + deg g + 1`. Laguerre series must share
/// their weight rate; finite-interval series must live on intervals of equal
/// length.
pub fn convolve(f: &PolySeries, g: &PolySeries) -> Result<PolySeries> {
    if f.basis() != g.basis() {
        return Err(Error::Contract(format!(
            "bases differ: {} vs {}",
            f.basis(),
            g.basis()
        )));
    }
    if !f.basis().is_finite_interval() {
        return PolySeries::new(
            *f.basis(),
            Domain::HALF_LINE,
            apply_laguerre(f.coeffs(), g.coeffs()),
        );
    }
    let (df, dg) = (f.domain(), g.domain());
    check_lengths(df, dg)?;
    let r = build(f.basis(), f.coeffs(), g.degree())?.with_scale(0.5 * df.length());
    let c = r.apply(g.coeffs())?;
    PolySeries::new(*f.basis(), Domain::new(df.a + dg.a, df.b + dg.a)?, c)
}

/// Top-left `(N+1) x (N+1)` block of `R`, scale included.
pub fn truncate_square(r: &ConvMatrix, n: usize) -> Result<DMatrix<f64>> {
    if r.nrows() < n + 1 || r.ncols() < n + 1 {
        return Err(Error::Dimension(format!(
            "cannot take a {0}x{0} block of a {1}x{2} matrix",
            n + 1,
            r.nrows(),
            r.ncols()
        )));
    }
    Ok(DMatrix::from_fn(n + 1, n + 1, |k, j| r.scale() * r.get(k, j)))
}

/// `u = s + f * u` with kernel `f` and right-hand side `s` on one interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolterraProblem {
    pub kernel: PolySeries,
    pub rhs: PolySeries,
}

impl VolterraProblem {
    pub fn new(kernel: PolySeries, rhs: PolySeries) -> Result<Self> {
        let p = VolterraProblem { kernel, rhs };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.kernel.basis().is_finite_interval() {
            return Err(Error::UnsupportedBasis(self.kernel.basis().to_string()));
        }
        if self.kernel.basis() != self.rhs.basis() {
            return Err(Error::Contract("kernel and rhs use different bases".into()));
        }
        if self.kernel.domain() != self.rhs.domain() {
            return Err(Error::Contract("kernel and rhs live on different intervals".into()));
        }
        Ok(())
    }
}

/// Degree-`N` solution of `(I - R^N) c^u = c^s`, where `R^N` is the square
/// top block of the kernel's convolution matrix and `c^s` is the rhs
/// truncated or zero-padded to `N + 1` coefficients.
pub fn solve_second_kind(p: &VolterraProblem, n: usize) -> Result<PolySeries> {
    p.validate()?;
    let domain = p.kernel.domain();
    let r = build(p.kernel.basis(), p.kernel.coeffs(), n)?.with_scale(0.5 * domain.length());
    let a = DMatrix::identity(n + 1, n + 1) - truncate_square(&r, n)?;
    let rhs = DVector::from_column_slice(p.rhs.tailored(n + 1).coeffs());

    let biggest = a.amax();
    let lu = a.lu();
    let smallest = lu.u().diagonal().amin();
    let threshold = SINGULAR_PIVOT * biggest;
    if !(smallest > threshold) {
        return Err(Error::Singular {
            pivot: smallest,
            threshold,
        });
    }
    let c = lu
        .solve(&rhs)
        .ok_or(Error::Singular { pivot: 0.0, threshold })?;
    PolySeries::new(*p.kernel.basis(), domain, c.as_slice().to_vec())
}

/// Largest `|u(x) - s(x) - int_a^x f(x - t + a) u(t) dt|` over `samples`
/// equispaced points of the problem's interval.
pub fn residual(p: &VolterraProblem, u: &PolySeries, samples: usize) -> Result<f64> {
    p.validate()?;
    let d = p.kernel.domain();
    if u.domain() != d || u.basis() != p.kernel.basis() {
        return Err(Error::Contract("solution does not match the problem".into()));
    }
    if samples < 2 {
        return Err(Error::Argument("need at least two sample points".into()));
    }
    let h = convolve(&p.kernel, u)?;
    let top = h.domain().b;
    let mut worst = 0.0f64;
    for i in 0..samples {
        let x = d.a + d.length() * i as f64 / (samples - 1) as f64;
        let conv = h.eval((x + d.a).min(top))?;
        worst = worst.max((u.eval(x)? - p.rhs.eval(x)? - conv).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisSpec;
    use crate::convmat::build_chebyshev;

    #[test]
    fn unit_convolution() {
        let one = PolySeries::canonical(BasisSpec::Chebyshev, vec![1.0]).unwrap();
        let h = convolve(&one, &one).unwrap();
        assert_eq!(h.domain(), Domain::new(-2.0, 0.0).unwrap());
        assert_eq!(h.degree(), 1);
        for x in [-2.0, -1.3, 0.0] {
            assert!((h.eval(x).unwrap() - (x + 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn contract_errors() {
        let f = PolySeries::chebyshev(vec![1.0], 0.0, 2.0).unwrap();
        let g = PolySeries::chebyshev(vec![1.0], 0.0, 3.0).unwrap();
        assert!(matches!(convolve(&f, &g), Err(Error::Contract(_))));
        let l = PolySeries::canonical(BasisSpec::Legendre, vec![1.0]).unwrap();
        assert!(matches!(convolve(&f, &l), Err(Error::Contract(_))));
        assert!(VolterraProblem::new(f.clone(), g).is_err());
    }

    #[test]
    fn truncation_block() {
        let r = build_chebyshev(&[1.0], 2).unwrap();
        let t = truncate_square(&r, 2).unwrap();
        let d = r.to_dense();
        assert_eq!(t, d.rows(0, 3).into_owned());
        assert!(truncate_square(&r, 3).is_err());
    }

    #[test]
    fn zero_kernel_returns_rhs() {
        let k = PolySeries::chebyshev(vec![0.0], 0.0, 2.0).unwrap();
        let s = PolySeries::chebyshev(vec![1.0, 0.5, 0.25], 0.0, 2.0).unwrap();
        let p = VolterraProblem::new(k, s).unwrap();
        let u = solve_second_kind(&p, 4).unwrap();
        assert_eq!(u.coeffs(), &[1.0, 0.5, 0.25, 0.0, 0.0]);
        let u = solve_second_kind(&p, 1).unwrap();
        assert_eq!(u.coeffs(), &[1.0, 0.5]);
    }

    #[test]
    fn renewal_residual_is_small() {
        // f = 1 on [0, 1]: u = 1 + int_0^x u gives u = e^x
        let one = PolySeries::chebyshev(vec![1.0], 0.0, 1.0).unwrap();
        let p = VolterraProblem::new(one.clone(), one).unwrap();
        let u = solve_second_kind(&p, 20).unwrap();
        assert!(residual(&p, &u, 200).unwrap() < 1e-14);
        for x in [0.0, 0.4, 1.0] {
            assert!((u.eval(x).unwrap() - f64::exp(x)).abs() < 1e-14);
        }
        let crude = solve_second_kind(&p, 3).unwrap();
        assert!(residual(&p, &crude, 200).unwrap() > 1e-4);
    }

    #[test]
    fn singular_system_is_reported() {
        // R^0 = scale * R[0,0] = a_0 * 1 for a = [1] on [-1, 1], so I - R^0 = 0
        let k = PolySeries::canonical(BasisSpec::Chebyshev, vec![1.0]).unwrap();
        let p = VolterraProblem::new(k.clone(), k).unwrap();
        assert!(matches!(solve_second_kind(&p, 0), Err(Error::Singular { .. })));
    }
}
