use nalgebra::DMatrix;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};

/// Almost-banded convolution matrix of shape `(M+N+2) x (N+1)`.
///
/// Rows `0..=M` are stored densely. Every row below is stored only on the
/// diagonals `-(M+1)..=M+1`; everything else is a structural zero. Entry
/// `(k, n)` with `k > M+n+1` is never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvMatrix {
    basis: BasisSpec,
    m: usize,
    n: usize,
    scale: f64,
    banded: bool,
    top: Vec<f64>,
    band: Vec<f64>,
}

impl ConvMatrix {
    pub(crate) fn zeros(basis: BasisSpec, m: usize, n: usize, banded: bool) -> Self {
        ConvMatrix {
            basis,
            m,
            n,
            scale: 1.0,
            banded,
            top: vec![0.0; (m + 1) * (n + 1)],
            band: vec![0.0; (n + 1) * (2 * m + 3)],
        }
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    /// Degree `M` of the kernel series.
    pub fn kernel_degree(&self) -> usize {
        self.m
    }

    /// Degree bound `N` of the input series.
    pub fn input_degree(&self) -> usize {
        self.n
    }

    pub fn nrows(&self) -> usize {
        self.m + self.n + 2
    }

    pub fn ncols(&self) -> usize {
        self.n + 1
    }

    /// Interval Jacobian applied by [`ConvMatrix::apply`] and the dense exports.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// True when the matrix is banded on both sides (Legendre).
    pub fn is_banded(&self) -> bool {
        self.banded
    }

    /// Whether `(k, n)` belongs to the nonzero pattern.
    pub fn in_pattern(&self, k: usize, n: usize) -> bool {
        if k >= self.nrows() || n >= self.ncols() || k > self.m + n + 1 {
            return false;
        }
        if self.banded {
            return n <= k + self.m + 1;
        }
        k <= self.m || n <= k + self.m + 1
    }

    #[inline]
    fn band_index(&self, k: usize, n: usize) -> Option<usize> {
        let w = self.m + 1;
        if k + w < n || k > n + w {
            return None;
        }
        Some(n * (2 * w + 1) + k + w - n)
    }

    /// Unscaled entry `R[k, n]`; zero outside the pattern.
    #[inline]
    pub fn get(&self, k: usize, n: usize) -> f64 {
        if n > self.n {
            return 0.0;
        }
        if k <= self.m {
            return self.top[k * (self.n + 1) + n];
        }
        match self.band_index(k, n) {
            Some(i) => self.band[i],
            None => 0.0,
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, k: usize, n: usize, v: f64) {
        if k <= self.m {
            self.top[k * (self.n + 1) + n] = v;
        } else {
            let i = self
                .band_index(k, n)
                .unwrap_or_else(|| panic!("({k}, {n}) outside the band"));
            self.band[i] = v;
        }
    }

    /// Rows of column `n` that may hold nonzeros, excluding row 0.
    pub(crate) fn column_rows(&self, n: usize) -> impl Iterator<Item = usize> {
        let m = self.m;
        let lo_band = (m + 1).max(n.saturating_sub(m + 1));
        let hi = n + m + 1;
        (1..=m.min(hi)).chain(lo_band..=hi)
    }

    /// Copy restricted to the first `n + 1` columns.
    pub(crate) fn truncated(&self, n: usize) -> ConvMatrix {
        assert!(n <= self.n);
        let mut out = ConvMatrix::zeros(self.basis, self.m, n, self.banded);
        out.scale = self.scale;
        for k in 0..=self.m {
            let src = &self.top[k * (self.n + 1)..k * (self.n + 1) + n + 1];
            out.top[k * (n + 1)..(k + 1) * (n + 1)].copy_from_slice(src);
        }
        let width = 2 * self.m + 3;
        out.band.copy_from_slice(&self.band[..(n + 1) * width]);
        out
    }

    /// Unscaled column `n`, all `M+N+2` rows.
    pub fn column(&self, n: usize) -> Vec<f64> {
        (0..self.nrows()).map(|k| self.get(k, n)).collect()
    }

    /// `scale * R b`; `b` shorter than `N+1` is zero-padded.
    pub fn apply(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() > self.ncols() {
            return Err(Error::Dimension(format!(
                "input has {} coefficients, matrix accepts at most {}",
                b.len(),
                self.ncols()
            )));
        }
        let mut c = vec![0.0; self.nrows()];
        let width = 2 * self.m + 3;
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0.0 {
                continue;
            }
            for k in 0..=self.m {
                c[k] += self.top[k * (self.n + 1) + j] * bj;
            }
            let lo = (self.m + 1).max(j.saturating_sub(self.m + 1));
            let col = &self.band[j * width..(j + 1) * width];
            for k in lo..=j + self.m + 1 {
                c[k] += col[k + self.m + 1 - j] * bj;
            }
        }
        if self.scale != 1.0 {
            c.iter_mut().for_each(|v| *v *= self.scale);
        }
        Ok(c)
    }

    /// Dense `(M+N+2) x (N+1)` matrix, scale included.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.nrows(), self.ncols(), |k, n| self.scale * self.get(k, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_and_storage() {
        let mut r = ConvMatrix::zeros(BasisSpec::Chebyshev, 2, 10, false);
        assert_eq!((r.nrows(), r.ncols()), (14, 11));
        r.set(1, 9, 3.0);
        r.set(8, 5, 4.0);
        r.set(5, 8, 5.0);
        assert_eq!(r.get(1, 9), 3.0);
        assert_eq!(r.get(8, 5), 4.0);
        assert_eq!(r.get(5, 8), 5.0);
        assert_eq!(r.get(13, 2), 0.0);
        assert!(r.in_pattern(0, 10) && !r.in_pattern(3, 10) && !r.in_pattern(9, 5));
        let rows: Vec<usize> = r.column_rows(9).collect();
        assert_eq!(rows, vec![1, 2, 6, 7, 8, 9, 10, 11, 12]);
    }

    #[test]
    #[should_panic]
    fn setting_outside_band_panics() {
        let mut r = ConvMatrix::zeros(BasisSpec::Chebyshev, 1, 10, false);
        r.set(9, 2, 1.0);
    }

    #[test]
    fn apply_rejects_long_input() {
        let r = ConvMatrix::zeros(BasisSpec::Chebyshev, 1, 3, false);
        assert!(matches!(r.apply(&[0.0; 5]), Err(Error::Dimension(_))));
        assert_eq!(r.apply(&[0.0; 2]).unwrap(), vec![0.0; 6]);
    }
}
