//! Convolution on the half line with weighted Laguerre functions.

use voltconv::laguerre::fit_laguerre;
use voltconv::volterra::convolve;

fn main() -> voltconv::Result<()> {
    let s3 = 3f64.sqrt();
    let f = |x: f64| 0.5 * x * x * (-x).exp();
    let g = move |x: f64| -((0.5 * s3 * x).cos() + s3 * (0.5 * s3 * x).sin()) * (-1.5 * x).exp() / 3.0;
    let h = move |x: f64| {
        let t = 0.5 * s3 * x;
        -((-x).exp() * (x * x - x - 1.0) + (-1.5 * x).exp() * (s3 * t.sin() + t.cos())) / 3.0
    };

    let fl = fit_laguerre(f, 2, 1.0)?;
    let gl = fit_laguerre(g, 54, 1.0)?;
    println!("f coefficients {:?}", fl.coeffs());
    let hl = convolve(&fl, &gl)?;
    println!("h has degree {}", hl.degree());
    for x in [0.0, 1.0, 5.0, 20.0, 100.0, 1e4] {
        let v = hl.eval(x)?;
        println!("x = {x:8}  h {v:+.6e}  error {:.1e}", (v - h(x)).abs());
    }
    Ok(())
}
