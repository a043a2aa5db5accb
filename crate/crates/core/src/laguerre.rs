//! Convolution on the half line in the weighted Laguerre basis.
//!
//! For `phi_n(x) = exp(-s x) L_n(x)` the convolution of two basis functions
//! is `phi_{m+n} - phi_{m+n+1}`, for any rate `s > 0`. The matrix is the
//! difference of two lower-triangular Toeplitz matrices and is never stored.

use nalgebra::DMatrix;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use twofloat::TwoFloat;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::series::PolySeries;

/// Above this many multiply-adds `apply` switches to FFT convolution.
pub const FFT_THRESHOLD: usize = 1 << 16;

const MAX_NEWTON: usize = 100;
const BIG: f64 = 1e150;

/// Implicit `(M+N+2) x (N+1)` Laguerre convolution matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreConvMatrix {
    a: Vec<f64>,
    n: usize,
}

pub fn build_laguerre(a: &[f64], n: usize) -> Result<LaguerreConvMatrix> {
    if a.is_empty() {
        return Err(Error::Argument("kernel needs at least one coefficient".into()));
    }
    Ok(LaguerreConvMatrix { a: a.to_vec(), n })
}

impl LaguerreConvMatrix {
    pub fn kernel(&self) -> &[f64] {
        &self.a
    }

    pub fn kernel_degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn input_degree(&self) -> usize {
        self.n
    }

    pub fn nrows(&self) -> usize {
        self.a.len() + self.n + 1
    }

    pub fn ncols(&self) -> usize {
        self.n + 1
    }

    /// `a_{k-n} - a_{k-n-1}`, zero outside the kernel.
    pub fn get(&self, k: usize, n: usize) -> f64 {
        let at = |j: isize| {
            if j >= 0 && (j as usize) < self.a.len() {
                self.a[j as usize]
            } else {
                0.0
            }
        };
        let j = k as isize - n as isize;
        at(j) - at(j - 1)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.nrows(), self.ncols(), |k, n| self.get(k, n))
    }

    /// `R b`, of length `M + len(b) + 1`.
    pub fn apply(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() > self.ncols() {
            return Err(Error::Dimension(format!(
                "input has {} coefficients, matrix accepts at most {}",
                b.len(),
                self.ncols()
            )));
        }
        Ok(apply_laguerre(&self.a, b))
    }
}

/// `c_k = s_k - s_{k-1}` where `s = a * b` is the full discrete convolution.
pub fn apply_laguerre(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return vec![0.0; a.len() + b.len() + 1];
    }
    let s = if a.len() * b.len() > FFT_THRESHOLD {
        convolve_fft(a, b)
    } else {
        convolve_direct(a, b)
    };
    telescope(&s)
}

fn telescope(s: &[f64]) -> Vec<f64> {
    let mut c = Vec::with_capacity(s.len() + 1);
    let mut prev = 0.0;
    for &v in s {
        c.push(v - prev);
        prev = v;
    }
    c.push(-prev);
    c
}

/// Full discrete convolution with Neumaier-compensated accumulation.
pub(crate) fn convolve_direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len() + b.len() - 1;
    let mut s = vec![0.0; len];
    let mut comp = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let p = ai * bj;
            let acc = s[i + j];
            let t = acc + p;
            comp[i + j] += if acc.abs() >= p.abs() {
                (acc - t) + p
            } else {
                (p - t) + acc
            };
            s[i + j] = t;
        }
    }
    s.iter().zip(&comp).map(|(s, c)| s + c).collect()
}

pub(crate) fn convolve_fft(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len() + b.len() - 1;
    let size = len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let pad = |v: &[f64]| {
        let mut out = vec![Complex::new(0.0, 0.0); size];
        for (o, &x) in out.iter_mut().zip(v) {
            o.re = x;
        }
        out
    };
    let mut fa = pad(a);
    let mut fb = pad(b);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    fa[..len].iter().map(|z| z.re / size as f64).collect()
}

/// `L_n(x)` for `n = 0..=nmax` times `exp(-rate x)`, with intermediate
/// rescaling so large `x` stays finite.
pub fn weighted_laguerre_values(x: f64, nmax: usize, rate: f64) -> Vec<f64> {
    let mut raw = Vec::with_capacity(nmax + 1);
    let mut scales = Vec::with_capacity(nmax + 1);
    let mut log_scale = 0.0f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    raw.push(cur);
    scales.push(log_scale);
    for n in 0..nmax {
        let m = n as f64;
        let next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            log_scale += BIG.ln();
        }
        raw.push(cur);
        scales.push(log_scale);
    }
    raw.iter()
        .zip(&scales)
        .map(|(v, s)| v * (s - rate * x).exp())
        .collect()
}

/// `(ln |L_n(x)|, L_n(x) / L_{n-1}(x))` with rescaling.
fn laguerre_log(n: usize, x: f64) -> (f64, f64) {
    let mut log_scale = 0.0f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    for j in 0..n {
        let m = j as f64;
        let next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            log_scale += BIG.ln();
        }
    }
    (cur.abs().ln() + log_scale, cur / prev)
}

/// `(L_n(x), L_{n-1}(x), log scale)` in double-double.
fn laguerre_pair_dd(n: usize, x: TwoFloat) -> (TwoFloat, TwoFloat, f64) {
    let mut log_scale = 0.0f64;
    let mut prev = TwoFloat::from(0.0);
    let mut cur = TwoFloat::from(1.0);
    for j in 0..n {
        let m = j as f64;
        let next = ((-x + (2.0 * m + 1.0)) * cur - prev * m) / (m + 1.0);
        prev = cur;
        cur = next;
        if cur.hi().abs() > BIG {
            prev = prev / BIG;
            cur = cur / BIG;
            log_scale += BIG.ln();
        }
    }
    (cur, prev, log_scale)
}

/// Nodes (ascending) and log-weights of the `n`-point Gauss–Laguerre rule
/// for the weight `exp(-x)`.
pub fn gauss_laguerre_log(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Argument("Gauss rule needs at least one node".into()));
    }
    let nf = n as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut log_w = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut converged = false;
        let mut last = f64::INFINITY;
        for _ in 0..MAX_NEWTON {
            // L_n / L_n' = x / (n (1 - L_{n-1} / L_n))
            let (_, ratio) = laguerre_log(n, z);
            let step = z / (nf * (1.0 - 1.0 / ratio));
            z -= step;
            let size = z.abs().max(1.0);
            // rounding noise in the ratio stalls the steps short of eps
            if step.abs() <= 4.0 * f64::EPSILON * size
                || (step.abs() <= 1e-11 * size && step.abs() >= 0.5 * last)
            {
                converged = true;
                break;
            }
            last = step.abs();
        }
        if !converged || !(z > 0.0) || nodes.last().is_some_and(|&p| z <= p) {
            return Err(Error::NonConvergence {
                what: "Gauss-Laguerre Newton iteration",
                iterations: MAX_NEWTON,
            });
        }
        let mut x = TwoFloat::from(z);
        for _ in 0..2 {
            let (p, q, _) = laguerre_pair_dd(n, x);
            let (num, den) = (x * p, (p - q) * nf);
            x -= num.hi() / den.hi();
        }
        // w = x / ((n+1)^2 L_{n+1}(x)^2)
        let (next, _, scale) = laguerre_pair_dd(n + 1, x);
        let ln_next = next.hi().abs().ln() + scale;
        log_w.push(x.hi().ln() - 2.0 * ((nf + 1.0).ln() + ln_next));
        z = x.hi();
        nodes.push(z);
    }
    Ok((nodes, log_w))
}

/// Weighted Laguerre coefficients `0..=degree` of `f` by Gauss–Laguerre
/// projection with `2 degree + 8` nodes.
pub fn fit_laguerre(f: impl Fn(f64) -> f64, degree: usize, rate: f64) -> Result<PolySeries> {
    BasisSpec::WeightedLaguerre { rate }.validate()?;
    let (x, log_w) = gauss_laguerre_log(2 * degree + 8)?;
    let mut c = vec![0.0; degree + 1];
    for (&xi, &lw) in x.iter().zip(&log_w) {
        let fi = f(xi);
        if fi == 0.0 {
            continue;
        }
        // w e^{x} phi_n(x) e^{(rate - 1/2) x} f(x) with phi_n = e^{-x/2} L_n
        let phi = weighted_laguerre_values(xi, degree, 0.5);
        let factor = fi * (lw + xi + (rate - 0.5) * xi).exp();
        for (cn, p) in c.iter_mut().zip(&phi) {
            *cn += factor * p;
        }
    }
    PolySeries::laguerre(c, rate)
}
