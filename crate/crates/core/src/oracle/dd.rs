//! Double-double versions of the basis recurrences and Gauss rules.
//!
//! Basis values for Gegenbauer and Jacobi families grow polynomially with
//! degree, so double-precision quadrature loses several digits to
//! cancellation. Everything here carries about 32 significant digits.

use twofloat::TwoFloat as D;

use crate::basis::BasisSpec;
use crate::error::Result;

use super::quadrature::gauss_jacobi_nodes;

#[inline]
pub(crate) fn d(v: f64) -> D {
    D::from(v)
}

/// `a / b` to full double-double precision. The `/` operator of `TwoFloat`
/// with a `TwoFloat` divisor is only accurate to about one double.
pub(crate) fn div(a: D, b: D) -> D {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    D::new_add(q1, q2) + q3
}

/// `(a, b, c)` of `p_{n+1} = (a x + b) p_n - c p_{n-1}`.
pub(crate) fn recurrence(basis: &BasisSpec, n: usize) -> (D, D, D) {
    let nf = n as f64;
    let zero = d(0.0);
    match *basis {
        BasisSpec::Chebyshev => {
            if n == 0 {
                (d(1.0), zero, zero)
            } else {
                (d(2.0), zero, d(1.0))
            }
        }
        BasisSpec::Legendre => (d(2.0 * nf + 1.0) / (nf + 1.0), zero, d(nf) / (nf + 1.0)),
        BasisSpec::Gegenbauer { lambda } => (
            (d(nf) + lambda) * 2.0 / (nf + 1.0),
            zero,
            (d(nf) + 2.0 * lambda - 1.0) / (nf + 1.0),
        ),
        BasisSpec::Jacobi { alpha, beta } => jacobi_recurrence(alpha, beta, n),
        BasisSpec::WeightedLaguerre { .. } => unreachable!("finite-interval bases only"),
    }
}

fn jacobi_recurrence(alpha: f64, beta: f64, n: usize) -> (D, D, D) {
    let ab = d(alpha) + beta;
    if n == 0 {
        return ((ab + 2.0) / 2.0, (d(alpha) - beta) / 2.0, d(0.0));
    }
    let nf = n as f64;
    let s = ab + 2.0 * nf;
    let den = (ab + nf + 1.0) * s * (2.0 * (nf + 1.0));
    let a2b2 = d(alpha) * alpha - d(beta) * beta;
    (
        div((s + 1.0) * (s + 2.0) * s, den),
        div((s + 1.0) * a2b2, den),
        div((d(alpha) + nf) * (d(beta) + nf) * (s + 2.0) * 2.0, den),
    )
}

/// `p_0(x) ..= p_nmax(x)`.
pub(crate) fn values(basis: &BasisSpec, x: D, nmax: usize) -> Vec<D> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(d(1.0));
    if nmax == 0 {
        return out;
    }
    let (a, b, _) = recurrence(basis, 0);
    out.push(a * x + b);
    for n in 1..nmax {
        let (a, b, c) = recurrence(basis, n);
        let next = (a * x + b) * out[n] - c * out[n - 1];
        out.push(next);
    }
    out
}

/// Recurrence coefficients `0..=nmax`, for callers that evaluate many points.
pub(crate) fn recurrence_table(basis: &BasisSpec, nmax: usize) -> Vec<(D, D, D)> {
    (0..=nmax).map(|n| recurrence(basis, n)).collect()
}

/// `p_n(x)` from a precomputed table.
pub(crate) fn value_with(table: &[(D, D, D)], x: D, n: usize) -> D {
    let mut prev = d(0.0);
    let mut cur = d(1.0);
    for &(a, b, c) in &table[..n] {
        let next = (a * x + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `sum_k c_k p_k(y)` by backward summation.
pub(crate) fn clenshaw_with(table: &[(D, D, D)], coeffs: &[f64], y: D) -> D {
    let n = coeffs.len();
    if n == 1 {
        return d(coeffs[0]);
    }
    let mut b1 = d(0.0);
    let mut b2 = d(0.0);
    for k in (1..n).rev() {
        let (a, b, _) = table[k];
        let c_next = table[k + 1].2;
        let bk = (a * y + b) * b1 - c_next * b2 + coeffs[k];
        b2 = b1;
        b1 = bk;
    }
    let (a0, b0, _) = table[0];
    (a0 * y + b0) * b1 - table[1].2 * b2 + coeffs[0]
}

/// `T_n(x)`.
pub(crate) fn chebyshev_value(x: D, n: usize) -> D {
    if n == 0 {
        return d(1.0);
    }
    let x2 = x * 2.0;
    let mut prev = d(1.0);
    let mut cur = x;
    for _ in 1..n {
        let next = x2 * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `sum_k c_k T_k(y)`.
pub(crate) fn chebyshev_clenshaw(coeffs: &[f64], y: D) -> D {
    let y2 = y * 2.0;
    let mut b1 = d(0.0);
    let mut b2 = d(0.0);
    for &c in coeffs[1..].iter().rev() {
        let bk = y2 * b1 - b2 + c;
        b2 = b1;
        b1 = bk;
    }
    y * b1 - b2 + coeffs[0]
}

fn jacobi_with_derivative(alpha: f64, beta: f64, n: usize, x: D) -> (D, D) {
    let basis = BasisSpec::Jacobi { alpha, beta };
    let mut prev = d(1.0);
    let mut cur = recurrence(&basis, 0).0 * x + recurrence(&basis, 0).1;
    if n == 0 {
        return (prev, d(0.0));
    }
    for j in 1..n {
        let (a, b, c) = jacobi_recurrence(alpha, beta, j);
        let next = (a * x + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    let nf = n as f64;
    let s = d(alpha) + beta + 2.0 * nf;
    let num = (d(alpha) - beta - s * x) * cur * nf + (d(alpha) + nf) * (d(beta) + nf) * prev * 2.0;
    (cur, div(num, s * (d(1.0) - x * x)))
}

/// Gauss–Jacobi rule refined to double-double precision from the
/// double-precision nodes.
pub(crate) fn gauss_jacobi(alpha: f64, beta: f64, n: usize) -> Result<(Vec<D>, Vec<D>)> {
    let (x0, _) = gauss_jacobi_nodes(alpha, beta, n)?;
    let ab = d(alpha) + beta;
    // Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!), up to a constant
    // that is exact for the Legendre weight
    let mut c = if alpha == 0.0 && beta == 0.0 {
        d(1.0)
    } else {
        use statrs::function::gamma::gamma;
        d(gamma(alpha + 2.0) * gamma(beta + 2.0) / gamma(alpha + beta + 2.0))
    };
    for j in 2..=n {
        let jf = j as f64;
        c = div(c * (d(alpha) + jf) * (d(beta) + jf), (ab + jf) * jf);
    }
    let scale = c * 2f64.powf(alpha + beta + 1.0);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x in &x0 {
        let mut x = d(x);
        for _ in 0..3 {
            let (p, dp) = jacobi_with_derivative(alpha, beta, n, x);
            x -= div(p, dp);
        }
        let (_, dp) = jacobi_with_derivative(alpha, beta, n, x);
        weights.push(div(scale, (d(1.0) - x * x) * dp * dp));
        nodes.push(x);
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_double_double() {
        let q = div(d(1.0), d(7.0));
        assert!(f64::from(q * 7.0 - 1.0).abs() < 1e-31);
        let r = div(d(2.0), div(d(1.0), d(3.0)));
        assert!(f64::from(r - 6.0).abs() < 1e-30);
    }

    #[test]
    fn legendre_rule_is_exact_to_double_double() {
        let (x, w) = gauss_jacobi(0.0, 0.0, 12).unwrap();
        let mut s = d(0.0);
        for (x, w) in x.iter().zip(&w) {
            let x2 = *x * *x;
            let mut p = *w;
            for _ in 0..11 {
                p = p * x2;
            }
            s += p;
        }
        let err = s - d(2.0) / 23.0;
        assert!(f64::from(err).abs() < 1e-30, "{err:?}");
    }

    #[test]
    fn values_agree_with_double_recurrence() {
        let b = BasisSpec::jacobi(2.0, 1.5).unwrap();
        let hi = values(&b, d(0.3), 40);
        let lo = b.values_at(0.3, 40);
        for (h, l) in hi.iter().zip(&lo) {
            assert!((f64::from(*h) - l).abs() <= 1e-13 * l.abs().max(1.0));
        }
        let t = recurrence_table(&b, 41);
        assert!((f64::from(value_with(&t, d(0.3), 40)) - lo[40]).abs() <= 1e-13 * lo[40].abs());
        let coeffs = [0.5, -1.0, 0.25];
        let want = 0.5 - lo[1] + 0.25 * lo[2];
        assert!((f64::from(clenshaw_with(&t, &coeffs, d(0.3))) - want).abs() < 1e-15);

        let t = recurrence_table(&BasisSpec::Chebyshev, 12);
        let c: Vec<f64> = (0..11).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let y = d(-0.7);
        assert!(f64::from(chebyshev_clenshaw(&c, y) - clenshaw_with(&t, &c, y)).abs() < 1e-30);
        assert!(f64::from(chebyshev_value(y, 10) - value_with(&t, y, 10)).abs() < 1e-30);
    }
}
