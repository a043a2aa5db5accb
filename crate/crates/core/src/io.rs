//! File formats: series as JSON or CSV, dense matrices as CSV.
//!
//! Series CSV carries the basis and domain in `#` header lines:
//!
//! ```text
//! # basis: {"kind":"Chebyshev"}
//! # domain: 0,2
//! 0.5
//! -0.25
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::series::{Domain, PolySeries};

/// C's `%.17g`: shortest of fixed or exponent form at 17 significant digits,
/// trailing zeros removed.
pub fn fmt_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs());
    }
    strip_zeros(&format!("{:.*}", (16 - exp) as usize, v)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn series_to_json(series: &PolySeries) -> Result<String> {
    Ok(serde_json::to_string_pretty(series)?)
}

pub fn series_from_json(text: &str) -> Result<PolySeries> {
    Ok(serde_json::from_str(text)?)
}

pub fn series_to_csv(series: &PolySeries) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "# basis: {}", serde_json::to_string(series.basis())?);
    let d = series.domain();
    if d.is_finite() {
        let _ = writeln!(out, "# domain: {},{}", fmt_g17(d.a), fmt_g17(d.b));
    } else {
        let _ = writeln!(out, "# domain: {},inf", fmt_g17(d.a));
    }
    for c in series.coeffs() {
        let _ = writeln!(out, "{}", fmt_g17(*c));
    }
    Ok(out)
}

pub fn series_from_csv(text: &str) -> Result<PolySeries> {
    let mut basis: Option<BasisSpec> = None;
    let mut domain: Option<Domain> = None;
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let Some((key, value)) = rest.split_once(':') else {
                continue;
            };
            match key.trim() {
                "basis" => basis = Some(serde_json::from_str(value.trim())?),
                "domain" => domain = Some(parse_domain(value)?),
                _ => {}
            }
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: not a number: {line:?}", i + 1)))?;
        coeffs.push(v);
    }
    let basis = basis.unwrap_or(BasisSpec::Chebyshev);
    let domain = domain.unwrap_or(if basis.is_finite_interval() {
        Domain::CANONICAL
    } else {
        Domain::HALF_LINE
    });
    PolySeries::new(basis, domain, coeffs)
}

fn parse_domain(text: &str) -> Result<Domain> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("domain needs two bounds: {text:?}")));
    }
    let num = |s: &str| -> Result<f64> {
        match s {
            "inf" | "null" => Ok(f64::INFINITY),
            _ => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad domain bound {s:?}"))),
        }
    };
    Ok(Domain {
        a: num(parts[0])?,
        b: num(parts[1])?,
    })
}

/// Reads a series from `.csv` or JSON (anything else).
pub fn read_series(path: &Path) -> Result<PolySeries> {
    let text = fs::read_to_string(path)?;
    if has_csv_extension(path) {
        series_from_csv(&text)
    } else {
        series_from_json(&text)
    }
}

pub fn write_series(series: &PolySeries, path: &Path) -> Result<()> {
    let text = if has_csv_extension(path) {
        series_to_csv(series)?
    } else {
        series_to_json(series)?
    };
    fs::write(path, text)?;
    Ok(())
}

fn has_csv_extension(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Row-major, comma-separated, `%.17g`.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::with_capacity(m.len() * 24);
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|v| fmt_g17(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_from_csv(text: &str) -> Result<DMatrix<f64>> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_c() {
        assert_eq!(fmt_g17(0.5), "0.5");
        assert_eq!(fmt_g17(0.1), "0.10000000000000001");
        assert_eq!(fmt_g17(-1.0 / 3.0), "-0.33333333333333331");
        assert_eq!(fmt_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(fmt_g17(1e20), "1e+20");
        assert_eq!(fmt_g17(123456.0), "123456");
        assert_eq!(fmt_g17(0.0), "0");
        for &v in &[std::f64::consts::PI, 1.0 / 7.0, -2.5e-300, 6.02e23] {
            assert_eq!(fmt_g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = PolySeries::chebyshev(vec![0.1, -2.0, 1.0 / 3.0], 0.0, 2.0).unwrap();
        assert_eq!(series_from_csv(&series_to_csv(&s).unwrap()).unwrap(), s);
        let l = PolySeries::laguerre(vec![1.0, -2.0], 1.0).unwrap();
        assert_eq!(series_from_csv(&series_to_csv(&l).unwrap()).unwrap(), l);
        assert!(series_from_csv("# basis: {\"kind\":\"Chebyshev\"}\nabc\n").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -0.25, 1.0 / 3.0, 0.0]);
        let text = matrix_to_csv(&m);
        assert_eq!(text.lines().next().unwrap(), "1,-0.25");
        assert_eq!(matrix_from_csv(&text).unwrap(), m);
    }
}
