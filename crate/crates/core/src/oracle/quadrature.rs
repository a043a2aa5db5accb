use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

const MAX_NEWTON: usize = 100;

/// `(P_n(x), P_{n-1}(x))` for the Jacobi weight `(1-x)^alpha (1+x)^beta`.
///
/// Valid on the whole parameter range `alpha, beta > -1`, including
/// `alpha + beta = -1`.
fn jacobi_pair(alpha: f64, beta: f64, n: usize, x: f64) -> (f64, f64) {
    let ab = alpha + beta;
    let mut prev = 1.0;
    let mut cur = 0.5 * ((ab + 2.0) * x + alpha - beta);
    if n == 0 {
        return (prev, 0.0);
    }
    for j in 1..n {
        let jf = j as f64;
        let s = 2.0 * jf + ab;
        let next = ((s + 1.0) * ((s + 2.0) * s * x + alpha * alpha - beta * beta) * cur
            - 2.0 * (jf + alpha) * (jf + beta) * (s + 2.0) * prev)
            / (2.0 * (jf + 1.0) * (jf + ab + 1.0) * s);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `(P_n(x), P_n'(x))`.
fn jacobi_with_derivative(alpha: f64, beta: f64, n: usize, x: f64) -> (f64, f64) {
    let (p, q) = jacobi_pair(alpha, beta, n, x);
    let nf = n as f64;
    let s = 2.0 * nf + alpha + beta;
    let d = (nf * ((alpha - beta) - s * x) * p + 2.0 * (nf + alpha) * (nf + beta) * q)
        / (s * (1.0 - x * x));
    (p, d)
}

/// Nodes (descending) and weights of the `n`-point Gauss–Jacobi rule for
/// the weight `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
pub fn gauss_jacobi_nodes(alpha: f64, beta: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(alpha > -1.0 && beta > -1.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::Parameter(format!(
            "Gauss-Jacobi needs alpha, beta > -1, got ({alpha}, {beta})"
        )));
    }
    if n == 0 {
        return Err(Error::Argument("Gauss rule needs at least one node".into()));
    }
    let ab = alpha + beta;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);

    // Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!) as a running product
    let mut c = gamma(alpha + 2.0) * gamma(beta + 2.0) / gamma(ab + 2.0);
    for j in 2..=n {
        let jf = j as f64;
        c *= (jf + alpha) * (jf + beta) / ((jf + ab) * jf);
    }
    let scale = c * 2f64.powf(ab + 1.0);

    for i in 1..=n {
        let theta = (i as f64 + 0.5 * alpha - 0.25) * PI / (nf + 0.5 * (ab + 1.0));
        let mut x = theta.cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, d) = jacobi_with_derivative(alpha, beta, n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON {
                converged = true;
                break;
            }
        }
        if !converged || !(x > -1.0 && x < 1.0) {
            return Err(Error::NonConvergence {
                what: "Gauss-Jacobi Newton iteration",
                iterations: MAX_NEWTON,
            });
        }
        let (_, d) = jacobi_with_derivative(alpha, beta, n, x);
        nodes.push(x);
        weights.push(scale / ((1.0 - x * x) * d * d));
    }
    if nodes.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::NonConvergence {
            what: "Gauss-Jacobi root separation",
            iterations: MAX_NEWTON,
        });
    }
    Ok((nodes, weights))
}

pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    gauss_jacobi_nodes(0.0, 0.0, n)
}
