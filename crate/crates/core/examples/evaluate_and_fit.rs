//! Fit a smooth function on an interval and evaluate the series.

use voltconv::series::fit_chebyshev;
use voltconv::{ChopRule, Domain};

fn main() -> voltconv::Result<()> {
    let d = Domain::new(-1.0, 3.0)?;
    let f = |x: f64| (2.0 * x).sin() * (-0.3 * x).exp();
    let s = fit_chebyshev(f, d, ChopRule::default())?;
    println!("degree {}", s.degree());
    for x in [-1.0, 0.0, 1.5, 3.0] {
        let v = s.eval(x)?;
        println!("x = {x:5.2}  series {v:+.16e}  error {:.1e}", (v - f(x)).abs());
    }
    Ok(())
}
