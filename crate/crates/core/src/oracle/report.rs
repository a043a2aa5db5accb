use std::fmt::Write as _;

use crate::basis::BasisSpec;
use crate::io::fmt_g17;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    pub basis: BasisSpec,
    pub m: usize,
    pub n: usize,
    pub seed: Option<u64>,
    pub label: Option<String>,
}

impl ReportMeta {
    pub fn new(basis: BasisSpec, m: usize, n: usize) -> Self {
        ReportMeta {
            basis,
            m,
            n,
            seed: None,
            label: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ErrorGrid {
    /// `(k, n, |error|)` over the compared entries of a `rows x cols` matrix.
    Entrywise {
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, f64)>,
    },
    /// `(n, y, |error|)` for sampled column functions.
    Pointwise(Vec<(usize, f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub meta: ReportMeta,
    pub grid: ErrorGrid,
    pub max_abs: f64,
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    // NaN propagates so a blown-up build never looks accurate
    it.fold(0.0, |m: f64, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

impl ErrorReport {
    pub fn entrywise(
        meta: ReportMeta,
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, f64)>,
    ) -> Self {
        let max_abs = max_of(entries.iter().map(|e| e.2));
        ErrorReport {
            meta,
            grid: ErrorGrid::Entrywise {
                rows,
                cols,
                entries,
            },
            max_abs,
        }
    }

    pub fn pointwise(meta: ReportMeta, points: Vec<(usize, f64, f64)>) -> Self {
        let max_abs = max_of(points.iter().map(|e| e.2));
        ErrorReport {
            meta,
            grid: ErrorGrid::Pointwise(points),
            max_abs,
        }
    }

    /// Largest error over entries `(k, n)` accepted by `keep`.
    pub fn max_where(&self, keep: impl Fn(usize, usize) -> bool) -> f64 {
        match &self.grid {
            ErrorGrid::Entrywise { entries, .. } => {
                max_of(entries.iter().filter(|e| keep(e.0, e.1)).map(|e| e.2))
            }
            ErrorGrid::Pointwise(_) => self.max_abs,
        }
    }

    /// `#` meta lines, one triple per line, `max_abs` last.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let meta = &self.meta;
        let _ = writeln!(out, "# basis: {}", meta.basis);
        let _ = writeln!(out, "# M: {}", meta.m);
        let _ = writeln!(out, "# N: {}", meta.n);
        if let Some(seed) = meta.seed {
            let _ = writeln!(out, "# seed: {seed}");
        }
        if let Some(label) = &meta.label {
            let _ = writeln!(out, "# label: {label}");
        }
        match &self.grid {
            ErrorGrid::Entrywise { entries, .. } => {
                out.push_str("k,n,abs_error\n");
                for (k, n, e) in entries {
                    let _ = writeln!(out, "{k},{n},{}", fmt_g17(*e));
                }
            }
            ErrorGrid::Pointwise(points) => {
                out.push_str("n,y,abs_error\n");
                for (n, y, e) in points {
                    let _ = writeln!(out, "{n},{},{}", fmt_g17(*y), fmt_g17(*e));
                }
            }
        }
        let _ = writeln!(out, "max_abs,{}", fmt_g17(self.max_abs));
        out
    }
}
