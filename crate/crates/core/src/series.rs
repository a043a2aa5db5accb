//! Finite orthogonal-polynomial series: evaluation, adaptive Chebyshev
//! fitting and Chebyshev antiderivatives.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::basis::BasisSpec;
use crate::error::{Error, Result};

/// Closed interval `[a, b]`; `b` is `+inf` for the half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub a: f64,
    pub b: f64,
}

impl Domain {
    pub const CANONICAL: Domain = Domain { a: -1.0, b: 1.0 };
    pub const HALF_LINE: Domain = Domain {
        a: 0.0,
        b: f64::INFINITY,
    };

    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Argument(format!("invalid interval [{a}, {b}]")));
        }
        Ok(Domain { a, b })
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_finite(&self) -> bool {
        self.b.is_finite()
    }

    /// Affine map to `[-1, 1]`.
    /// Affine map to `[-1, 1]`; the identity on `[-1, 1]` itself.
    pub fn to_canonical(&self, x: f64) -> f64 {
        if *self == Domain::CANONICAL {
            return x;
        }
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    pub fn from_canonical(&self, y: f64) -> f64 {
        if *self == Domain::CANONICAL {
            return y;
        }
        self.a + 0.5 * (self.b - self.a) * (y + 1.0)
    }

    pub(crate) fn contains(&self, x: f64) -> bool {
        if self.is_finite() {
            let slack = 8.0 * f64::EPSILON * self.a.abs().max(self.b.abs()).max(1.0);
            x >= self.a - slack && x <= self.b + slack
        } else {
            x >= self.a - 8.0 * f64::EPSILON * self.a.abs().max(1.0) && !x.is_nan()
        }
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let b = if self.b.is_finite() { Some(self.b) } else { None };
        (self.a, b).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b): (f64, Option<f64>) = Deserialize::deserialize(d)?;
        Ok(Domain {
            a,
            b: b.unwrap_or(f64::INFINITY),
        })
    }
}

/// A finite series `sum_m c_m p_m` in a given basis and domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct PolySeries {
    basis: BasisSpec,
    domain: Domain,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawSeries {
    basis: BasisSpec,
    domain: Domain,
    coeffs: Vec<f64>,
}

impl TryFrom<RawSeries> for PolySeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        PolySeries::new(raw.basis, raw.domain, raw.coeffs)
    }
}

impl From<PolySeries> for RawSeries {
    fn from(s: PolySeries) -> Self {
        RawSeries {
            basis: s.basis,
            domain: s.domain,
            coeffs: s.coeffs,
        }
    }
}

impl PolySeries {
    pub fn new(basis: BasisSpec, domain: Domain, coeffs: Vec<f64>) -> Result<Self> {
        basis.validate()?;
        if coeffs.is_empty() {
            return Err(Error::Argument("series needs at least one coefficient".into()));
        }
        if basis.is_finite_interval() {
            Domain::new(domain.a, domain.b)?;
        } else if domain != Domain::HALF_LINE {
            return Err(Error::Argument("Laguerre series live on [0, inf)".into()));
        }
        Ok(PolySeries {
            basis,
            domain,
            coeffs,
        })
    }

    pub fn chebyshev(coeffs: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        PolySeries::new(BasisSpec::Chebyshev, Domain::new(a, b)?, coeffs)
    }

    /// Series on `[-1, 1]`.
    pub fn canonical(basis: BasisSpec, coeffs: Vec<f64>) -> Result<Self> {
        PolySeries::new(basis, Domain::CANONICAL, coeffs)
    }

    pub fn laguerre(coeffs: Vec<f64>, rate: f64) -> Result<Self> {
        PolySeries::new(BasisSpec::WeightedLaguerre { rate }, Domain::HALF_LINE, coeffs)
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Same series with coefficients truncated or zero-padded to `len`.
    pub fn tailored(&self, len: usize) -> PolySeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len.max(1), 0.0);
        PolySeries { coeffs, ..*self }
    }

    pub fn with_domain(&self, domain: Domain) -> Result<PolySeries> {
        PolySeries::new(self.basis, domain, self.coeffs.clone())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::Domain {
                point: x,
                a: self.domain.a,
                b: self.domain.b,
            });
        }
        Ok(match self.basis {
            BasisSpec::WeightedLaguerre { rate } => weighted_laguerre_sum(&self.coeffs, rate, x),
            _ => clenshaw(&self.basis, &self.coeffs, self.domain.to_canonical(x)),
        })
    }
}

/// Values of `series` at each point.
pub fn evaluate(series: &PolySeries, points: &[f64]) -> Result<Vec<f64>> {
    points.iter().map(|&x| series.eval(x)).collect()
}

/// Backward (Clenshaw) summation of `sum c_k p_k(y)` for a finite-interval
/// basis, `y` already in `[-1, 1]`.
pub fn clenshaw(basis: &BasisSpec, coeffs: &[f64], y: f64) -> f64 {
    let n = coeffs.len();
    if n == 1 {
        return coeffs[0];
    }
    let mut b1 = 0.0; // b_{k+1}
    let mut b2 = 0.0; // b_{k+2}
    for k in (1..n).rev() {
        let (a, b, _) = basis.recurrence(k);
        let (_, _, c_next) = basis.recurrence(k + 1);
        let bk = coeffs[k] + (a * y + b) * b1 - c_next * b2;
        b2 = b1;
        b1 = bk;
    }
    let (a0, b0, _) = basis.recurrence(0);
    let (_, _, c1) = basis.recurrence(1);
    coeffs[0] + (a0 * y + b0) * b1 - c1 * b2
}

/// `exp(-rate x) sum c_n L_n(x)` by forward recurrence with running rescaling,
/// so large `x` neither overflows the polynomials nor underflows the weight
/// prematurely.
pub(crate) fn weighted_laguerre_sum(coeffs: &[f64], rate: f64, x: f64) -> f64 {
    const BIG: f64 = 1e150;
    let mut log_scale = 0.0f64;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = coeffs[0];
    for (n, &c) in coeffs.iter().enumerate().skip(1) {
        let m = (n - 1) as f64;
        let next = ((2.0 * m + 1.0 - x) * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
        sum += c * cur;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            sum /= BIG;
            log_scale += BIG.ln();
        }
    }
    sum * (log_scale - rate * x).exp()
}

/// Stopping rule for [`fit_chebyshev`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChopRule {
    pub rel_tol: f64,
    pub max_degree: usize,
}

impl Default for ChopRule {
    fn default() -> Self {
        ChopRule {
            rel_tol: 1e-15,
            max_degree: 65536,
        }
    }
}

impl ChopRule {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) || self.max_degree < 1 {
            return Err(Error::Argument(format!("invalid chop rule {self:?}")));
        }
        Ok(())
    }
}

/// Chebyshev coefficients of the degree-`n` interpolant through values at
/// the second-kind points `cos(pi j / n)`, `j = 0..=n`.
pub fn chebyshev_coeffs_from_values(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    if n == 0 {
        return vec![values[0]];
    }
    // Even extension of length 2n turns the DCT-I into a plain FFT.
    let mut buf: Vec<Complex<f64>> = values
        .iter()
        .chain(values[1..n].iter().rev())
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(2 * n).process(&mut buf);
    let nf = n as f64;
    let mut c: Vec<f64> = buf[..=n].iter().map(|z| z.re / nf).collect();
    c[0] *= 0.5;
    c[n] *= 0.5;
    c
}

/// Samples `f` at `n + 1` second-kind Chebyshev points of `domain`, from
/// `+1` down to `-1`. The sine form keeps the points exactly symmetric.
fn sample(f: &impl Fn(f64) -> f64, domain: Domain, n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..=n)
        .map(|j| f(domain.from_canonical((PI * (nf - 2.0 * j as f64) / (2.0 * nf)).sin())))
        .collect()
}

/// Number of coefficients to keep, or `None` while the coefficients have
/// not yet levelled off at the noise floor.
///
/// The monotone envelope of `|c|` is scanned for a plateau, then the cut
/// is placed at the minimum of the log-envelope plus a gentle linear ramp.
/// `tol` is the relative accuracy sought.
pub fn plateau_cutoff(coeffs: &[f64], tol: f64) -> Option<usize> {
    let n = coeffs.len();
    if n < 17 {
        return None;
    }
    let mut env: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    for j in (0..n - 1).rev() {
        env[j] = env[j].max(env[j + 1]);
    }
    if env[0] == 0.0 {
        return Some(1);
    }
    let top = env[0];
    env.iter_mut().for_each(|e| *e /= top);

    // 1-based positions, as in the usual statement of the rule
    let mut plateau = 0;
    let mut j2 = 0;
    for j in 2..=n {
        j2 = (1.25 * j as f64 + 5.0).round() as usize;
        if j2 > n {
            return None;
        }
        let (e1, e2) = (env[j - 1], env[j2 - 1]);
        let r = 3.0 * (1.0 - e1.ln() / tol.ln());
        if e1 == 0.0 || e2 / e1 > r {
            plateau = j - 1;
            break;
        }
    }
    if plateau == 0 {
        return None;
    }
    if env[plateau - 1] == 0.0 {
        return Some(plateau);
    }
    let floor = tol.powf(7.0 / 6.0);
    let j3 = env.iter().filter(|&&e| e >= floor).count();
    if j3 < j2 {
        j2 = j3 + 1;
        env[j2 - 1] = floor;
    }
    let ramp = -tol.log10() / 3.0;
    let mut best = (f64::INFINITY, 1);
    for j in 1..=j2 {
        let cc = env[j - 1].log10() + ramp * (j - 1) as f64 / (j2 - 1).max(1) as f64;
        if cc < best.0 {
            best = (cc, j);
        }
    }
    Some(best.1.saturating_sub(1).max(1))
}

/// Adaptive Chebyshev approximation of `f` on `domain`.
///
/// Sample counts double from 16 until [`plateau_cutoff`] finds the
/// coefficients levelled off at `rule.rel_tol`; the series is chopped there.
pub fn fit_chebyshev(f: impl Fn(f64) -> f64, domain: Domain, rule: ChopRule) -> Result<PolySeries> {
    rule.validate()?;
    Domain::new(domain.a, domain.b)?;
    let mut n = 16usize;
    loop {
        let n_eff = n.min(rule.max_degree);
        let coeffs = chebyshev_coeffs_from_values(&sample(&f, domain, n_eff));
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Argument("function returned non-finite values".into()));
        }
        if let Some(keep) = plateau_cutoff(&coeffs, rule.rel_tol) {
            return PolySeries::chebyshev(coeffs[..keep].to_vec(), domain.a, domain.b);
        }
        if n_eff >= rule.max_degree {
            return Err(Error::NonResolution {
                degree: n_eff,
                best: Box::new(PolySeries::chebyshev(coeffs, domain.a, domain.b)?),
            });
        }
        n *= 2;
    }
}

/// Coefficients of `int_{-1}^x phi(t) dt` for a Chebyshev series `phi`;
/// the result has one more coefficient and vanishes at `x = -1`.
pub fn indefinite_integral_cheb(coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.is_empty() {
        return Err(Error::Argument("empty coefficient vector".into()));
    }
    let j_max = coeffs.len(); // J + 1
    let at = |j: usize| coeffs.get(j).copied().unwrap_or(0.0);
    let mut out = vec![0.0; j_max + 1];
    out[1] = at(0) - 0.5 * at(2);
    for j in 2..=j_max {
        out[j] = (at(j - 1) - at(j + 1)) / (2.0 * j as f64);
    }
    let mut sign = 1.0;
    let mut c0 = 0.0;
    for v in &out[1..] {
        c0 += sign * v;
        sign = -sign;
    }
    out[0] = c0;
    Ok(out)
}
