//! Convolve and solve a renewal equation with a known solution.
//!
//! f(x) = x^2 e^{-x} / 2 and u = f + f * u on [0, 2].

use voltconv::series::fit_chebyshev;
use voltconv::volterra::{convolve, residual, solve_second_kind, VolterraProblem};
use voltconv::{ChopRule, Domain};

fn f(x: f64) -> f64 {
    0.5 * x * x * (-x).exp()
}

fn u(x: f64) -> f64 {
    let s3 = 3f64.sqrt();
    let t = 0.5 * s3 * x;
    1.0 / 3.0 - (t.cos() + s3 * t.sin()) * (-1.5 * x).exp() / 3.0
}

fn max_error(d: Domain, err: impl Fn(f64) -> f64) -> f64 {
    (0..1000)
        .map(|i| err(d.a + d.length() * i as f64 / 999.0))
        .fold(0.0, f64::max)
}

fn main() -> voltconv::Result<()> {
    let d = Domain::new(0.0, 2.0)?;
    let fs = fit_chebyshev(f, d, ChopRule::default())?;
    let us = fit_chebyshev(u, d, ChopRule::default())?;
    println!("fitted degrees: f {}, u {}", fs.degree(), us.degree());

    let h = convolve(&fs, &us)?;
    println!("convolution error {:.1e}", max_error(d, |x| (h.eval(x).unwrap() - (u(x) - f(x))).abs()));

    let p = VolterraProblem::new(fs.clone(), fs)?;
    for n in (1..=25).step_by(4) {
        let sol = solve_second_kind(&p, n)?;
        let err = max_error(d, |x| (sol.eval(x).unwrap() - u(x)).abs());
        println!("N = {n:2}  error {err:.1e}  residual {:.1e}", residual(&p, &sol, 500)?);
    }
    Ok(())
}
