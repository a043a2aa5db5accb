//! Independent ground truth for convolution matrices.
//!
//! Nothing here touches the column recurrences. Convolution values come from
//! Gauss–Legendre quadrature of `f(x - t) g(t)`, which is exact for
//! polynomial integrands, and coefficients come from Gauss–Jacobi projection
//! against the basis weight. Both run in double-double arithmetic.

mod dd;
mod quadrature;
mod report;

use std::f64::consts::PI;

use twofloat::TwoFloat as D;

pub use quadrature::{gauss_jacobi_nodes, gauss_legendre};
pub use report::{ErrorGrid, ErrorReport, ReportMeta};

use crate::basis::BasisSpec;
use crate::convmat::ConvMatrix;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::series::PolySeries;

/// Largest `M + n` the coefficient oracle accepts.
pub const COEFF_ORACLE_CAP: usize = 600;

/// Jacobi parameters of the orthogonality weight of `basis`.
pub fn weight_parameters(basis: &BasisSpec) -> Result<(f64, f64)> {
    match *basis {
        BasisSpec::Chebyshev => Ok((-0.5, -0.5)),
        BasisSpec::Legendre => Ok((0.0, 0.0)),
        BasisSpec::Gegenbauer { lambda } => Ok((lambda - 0.5, lambda - 0.5)),
        BasisSpec::Jacobi { alpha, beta } => Ok((alpha, beta)),
        BasisSpec::WeightedLaguerre { .. } => Err(Error::UnsupportedBasis(basis.to_string())),
    }
}

/// Columns `0..=nmax` of the convolution matrix of `f`, each of length
/// `M + n + 2`. `f` is read on `[-1, 1]` whatever its stored domain.
///
/// Quadrature, basis values and projection run in double-double arithmetic.
pub fn conv_coeff_columns(f: &PolySeries, nmax: usize) -> Result<Vec<Vec<f64>>> {
    let basis = *f.basis();
    let (alpha, beta) = weight_parameters(&basis)?;
    let a = f.coeffs();
    let m = f.degree();
    if m + nmax > COEFF_ORACLE_CAP {
        return Err(Error::Oversize {
            size: m + nmax,
            cap: COEFF_ORACLE_CAP,
        });
    }
    let rows = m + nmax + 2;
    let table = dd::recurrence_table(&basis, rows + 1);
    let (x, w) = dd::gauss_jacobi(alpha, beta, rows)?;
    let (tl, wl) = dd::gauss_jacobi(0.0, 0.0, (m + nmax).div_ceil(2) + 2)?;

    // h[i][n] = int_{-1}^{x_i} f(x_i - 1 - t) p_n(t) dt
    let h: Vec<Vec<D>> = x
        .iter()
        .map(|&y| {
            let half = (y + 1.0) * 0.5;
            let mut acc = vec![dd::d(0.0); nmax + 1];
            for (&t0, &w0) in tl.iter().zip(&wl) {
                let t = half * (t0 + 1.0) - 1.0;
                let fv = half * w0 * dd::clenshaw_with(&table, a, y - 1.0 - t);
                for (slot, p) in acc.iter_mut().zip(dd::values(&basis, t, nmax)) {
                    *slot += fv * p;
                }
            }
            acc
        })
        .collect();

    let p: Vec<Vec<D>> = x.iter().map(|&y| dd::values(&basis, y, rows - 1)).collect();
    let norms: Vec<D> = (0..rows)
        .map(|k| (0..rows).fold(dd::d(0.0), |s, i| s + w[i] * p[i][k] * p[i][k]))
        .collect();

    Ok((0..=nmax)
        .map(|n| {
            (0..m + n + 2)
                .map(|k| {
                    let s = (0..rows).fold(dd::d(0.0), |s, i| s + w[i] * h[i][n] * p[i][k]);
                    f64::from(dd::div(s, norms[k]))
                })
                .collect()
        })
        .collect())
}

/// Column `n` of the convolution matrix of `f`.
pub fn conv_coeff_oracle(f: &PolySeries, n: usize) -> Result<Vec<f64>> {
    Ok(conv_coeff_columns(f, n)?.pop().expect("nonempty"))
}

/// `(f * g)(x)` at each point by Gauss–Legendre quadrature.
///
/// For `f` on `[a, b]` and `g` on `[c, d]` the convolution is
/// `int_c^{x-a} f(x - t) g(t) dt` on `[a + c, b + c]`.
pub fn conv_point_oracle(f: &PolySeries, g: &PolySeries, points: &[f64]) -> Result<Vec<f64>> {
    if !(f.basis().is_finite_interval() && g.basis().is_finite_interval()) {
        return Err(Error::UnsupportedBasis("half-line series".into()));
    }
    let (df, dg) = (f.domain(), g.domain());
    let len = df.length();
    if ((dg.length() - len) / len).abs() > 1e-14 {
        return Err(Error::Contract(format!(
            "interval lengths differ: {} vs {}",
            len,
            dg.length()
        )));
    }
    let (lo, hi) = (df.a + dg.a, df.b + dg.a);
    let (tl, wl) = dd::gauss_jacobi(0.0, 0.0, (f.degree() + g.degree()).div_ceil(2) + 2)?;
    let tf = dd::recurrence_table(f.basis(), f.coeffs().len() + 1);
    let tg = dd::recurrence_table(g.basis(), g.coeffs().len() + 1);
    let (fa, fs) = (dd::d(df.a), dd::div(dd::d(2.0), dd::d(df.b) - df.a));
    let (ga, gs) = (dd::d(dg.a), dd::div(dd::d(2.0), dd::d(dg.b) - dg.a));
    points
        .iter()
        .map(|&x| {
            let slack = 8.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
            if !(x >= lo - slack && x <= hi + slack) {
                return Err(Error::Domain {
                    point: x,
                    a: lo,
                    b: hi,
                });
            }
            let x = dd::d(x.clamp(lo, hi));
            let half = (x - fa - ga) * 0.5;
            let total = tl.iter().zip(&wl).fold(dd::d(0.0), |acc, (&t0, &w0)| {
                let t = ga + half * (t0 + 1.0);
                let fv = dd::clenshaw_with(&tf, f.coeffs(), clamp1((x - t - fa) * fs - 1.0));
                let gv = dd::clenshaw_with(&tg, g.coeffs(), clamp1((t - ga) * gs - 1.0));
                acc + half * w0 * fv * gv
            });
            Ok(f64::from(total))
        })
        .collect()
}

fn clamp1(v: D) -> D {
    if v > dd::d(1.0) {
        dd::d(1.0)
    } else if v < dd::d(-1.0) {
        dd::d(-1.0)
    } else {
        v
    }
}

/// `h_n(y) = int_{-1}^y f(y - 1 - t) p_n(t) dt` on the canonical interval.
pub fn column_function_oracle(f: &PolySeries, n: usize, ys: &[f64]) -> Result<Vec<f64>> {
    let oracle = ColumnOracle::new(f, n)?;
    Ok(ys.iter().map(|&y| oracle.eval(n, y)).collect())
}

/// One Gauss–Legendre rule shared by every column up to `nmax`.
struct ColumnOracle<'a> {
    f: &'a PolySeries,
    table: Vec<(D, D, D)>,
    nodes: Vec<D>,
    weights: Vec<D>,
}

impl<'a> ColumnOracle<'a> {
    fn new(f: &'a PolySeries, nmax: usize) -> Result<Self> {
        let basis = *f.basis();
        weight_parameters(&basis)?;
        let (nodes, weights) = dd::gauss_jacobi(0.0, 0.0, (f.degree() + nmax).div_ceil(2) + 2)?;
        Ok(ColumnOracle {
            f,
            table: dd::recurrence_table(&basis, f.coeffs().len() + nmax + 2),
            nodes,
            weights,
        })
    }

    fn eval(&self, n: usize, y: f64) -> f64 {
        let y = dd::d(y);
        let half = (y + 1.0) * 0.5;
        let cheb = *self.f.basis() == BasisSpec::Chebyshev;
        let a = self.f.coeffs();
        let total = self.nodes.iter().zip(&self.weights).fold(dd::d(0.0), |acc, (&t0, &w0)| {
            let t = half * (t0 + 1.0) - 1.0;
            let (fv, pv) = if cheb {
                (dd::chebyshev_clenshaw(a, y - 1.0 - t), dd::chebyshev_value(t, n))
            } else {
                (dd::clenshaw_with(&self.table, a, y - 1.0 - t), dd::value_with(&self.table, t, n))
            };
            acc + half * w0 * fv * pv
        });
        f64::from(total)
    }

    /// `sum_k c_k p_k(y)` for up to `M + nmax + 2` coefficients.
    fn series(&self, coeffs: &[f64], y: f64) -> f64 {
        f64::from(dd::clenshaw_with(&self.table, coeffs, dd::d(y)))
    }
}

/// Compares every stored entry of `built` against oracle columns.
pub fn compare_entrywise(built: &ConvMatrix, oracle: &[Vec<f64>]) -> Result<ErrorReport> {
    check_oracle_shape(built.ncols(), built.kernel_degree(), oracle)?;
    let mut entries = Vec::new();
    for (n, col) in oracle.iter().enumerate() {
        for (k, &want) in col.iter().enumerate() {
            if built.in_pattern(k, n) {
                entries.push((k, n, (built.get(k, n) - want).abs()));
            }
        }
    }
    let meta = ReportMeta::new(*built.basis(), built.kernel_degree(), built.input_degree());
    Ok(ErrorReport::entrywise(meta, built.nrows(), built.ncols(), entries))
}

/// Entrywise comparison for a plain dense matrix (the naive builder).
pub fn compare_dense(
    built: &nalgebra::DMatrix<f64>,
    m: usize,
    oracle: &[Vec<f64>],
    meta: ReportMeta,
) -> Result<ErrorReport> {
    check_oracle_shape(built.ncols(), m, oracle)?;
    if built.nrows() != built.ncols() + m + 1 {
        return Err(Error::Dimension(format!(
            "dense matrix is {}x{}, expected {} rows",
            built.nrows(),
            built.ncols(),
            built.ncols() + m + 1
        )));
    }
    let mut entries = Vec::new();
    for (n, col) in oracle.iter().enumerate() {
        for (k, &want) in col.iter().enumerate() {
            entries.push((k, n, (built[(k, n)] - want).abs()));
        }
    }
    Ok(ErrorReport::entrywise(meta, built.nrows(), built.ncols(), entries))
}

fn check_oracle_shape(ncols: usize, m: usize, oracle: &[Vec<f64>]) -> Result<()> {
    if oracle.len() != ncols {
        return Err(Error::Dimension(format!(
            "{} oracle columns for a matrix with {} columns",
            oracle.len(),
            ncols
        )));
    }
    for (n, col) in oracle.iter().enumerate() {
        if col.len() != m + n + 2 {
            return Err(Error::Dimension(format!(
                "oracle column {n} has {} rows, expected {}",
                col.len(),
                m + n + 2
            )));
        }
    }
    Ok(())
}

/// Samples random columns `n` and points `y`, and compares the series
/// `sum_k R[k, n] p_k(y)` with the quadrature value of `h_n(y)`.
///
/// Works at any size. `kernel` must be the series `built` came from.
pub fn pointwise_check(
    built: &ConvMatrix,
    kernel: &PolySeries,
    samples: usize,
    seed: u64,
) -> Result<ErrorReport> {
    if kernel.degree() != built.kernel_degree() || kernel.basis() != built.basis() {
        return Err(Error::Contract("kernel does not match the matrix".into()));
    }
    let basis = *built.basis();
    let m = built.kernel_degree();
    let oracle = ColumnOracle::new(kernel, built.ncols() - 1)?;
    let mut rng = SplitMix64::new(seed);
    let mut points = Vec::with_capacity(samples);
    for _ in 0..samples {
        let n = rng.below(built.ncols());
        // cosine-distributed so both endpoints are exercised
        let y = (PI * rng.next_f64()).cos();
        let col = built.column(n);
        let series = oracle.series(&col[..m + n + 2], y);
        let want = oracle.eval(n, y);
        points.push((n, y, (series - want).abs()));
    }
    let mut meta = ReportMeta::new(basis, m, built.input_degree());
    meta.seed = Some(seed);
    Ok(ErrorReport::pointwise(meta, points))
}
