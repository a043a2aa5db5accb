//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fail.

mod common;

use std::time::Instant;

use common::{laguerre_g, laguerre_h, renewal_f, renewal_u};
use voltconv::cli::instability_reports;
use voltconv::convmat::{build, build_chebyshev, build_chebyshev_naive, symmetry_ratio};
use voltconv::laguerre::fit_laguerre;
use voltconv::oracle::{compare_entrywise, conv_coeff_columns, pointwise_check, ErrorGrid};
use voltconv::rng::random_kernel;
use voltconv::series::{fit_chebyshev, indefinite_integral_cheb};
use voltconv::volterra::{convolve, solve_second_kind, VolterraProblem};
use voltconv::{BasisSpec, ChopRule, ConvMatrix, Domain, PolySeries};

const SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn chebyshev_kernel(m: usize, seed: u64) -> PolySeries {
    PolySeries::canonical(BasisSpec::Chebyshev, random_kernel(m, seed)).unwrap()
}

fn grid(d: Domain, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| d.a + d.length() * i as f64 / (n - 1) as f64)
}

fn criterion_1() -> Outcome {
    let f = chebyshev_kernel(10, SEED);
    let t = Instant::now();
    let r = build_chebyshev(f.coeffs(), 50).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let err = compare_entrywise(&r, &conv_coeff_columns(&f, 50).unwrap()).unwrap().max_abs;
    outcome(
        err <= 1e-14 && secs < 1.0,
        format!("M=10 N=50 max|R - oracle| = {err:.3e} (<= 1e-14), build {:.2e} s (< 1 s)", secs),
    )
}

fn criterion_2() -> Outcome {
    let (naive, stable) = instability_reports(10, 50, SEED).unwrap();
    let above = naive.max_where(|k, n| n > k);
    let corner = build_chebyshev_naive(&random_kernel(10, SEED), 50).unwrap()[(0, 50)];
    outcome(
        above >= 1e3 && corner.abs() >= 1e6 && stable.max_abs <= 1e-14,
        format!(
            "naive above-diagonal error {above:.3e} (>= 1e3), |naive R[0,50]| = {:.3e} (>= 1e6), stable {:.3e} (<= 1e-14)",
            corner.abs(),
            stable.max_abs
        ),
    )
}

fn criterion_3() -> Outcome {
    let f = chebyshev_kernel(1000, SEED);
    let t = Instant::now();
    let r = build_chebyshev(f.coeffs(), 5000).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let report = pointwise_check(&r, &f, 500, SEED).unwrap();
    outcome(
        report.max_abs <= 1e-13 && secs < 60.0,
        format!(
            "M=1000 N=5000 build {secs:.2} s (< 60 s), 500-sample pointwise max error {:.3e} (<= 1e-13)",
            report.max_abs
        ),
    )
}

fn relative_pointwise(r: &ConvMatrix, f: &PolySeries, samples: usize) -> (f64, f64) {
    let report = pointwise_check(r, f, samples, SEED).unwrap();
    let ErrorGrid::Pointwise(points) = &report.grid else {
        unreachable!()
    };
    // relative to the column function's size at the sample
    let rel = points
        .iter()
        .map(|&(n, y, e)| {
            let col = r.column(n);
            let size: f64 = f.basis().values_at(y, col.len() - 1).iter().zip(&col).map(|(p, c)| p * c).sum();
            e / size.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    (report.max_abs, rel)
}

fn criterion_4() -> Outcome {
    let bases = [BasisSpec::Gegenbauer { lambda: 2.0 }, BasisSpec::Jacobi { alpha: 2.0, beta: 1.5 }];
    let mut pass = true;
    let mut parts = Vec::new();
    for basis in bases {
        let f = PolySeries::canonical(basis, random_kernel(50, SEED)).unwrap();
        let r = build(&basis, f.coeffs(), 250).unwrap();
        let err = compare_entrywise(&r, &conv_coeff_columns(&f, 250).unwrap()).unwrap().max_abs;
        pass &= err <= 1e-12;
        parts.push(format!("{basis} M=50 N=250 entrywise {err:.3e} (<= 1e-12)"));

        let f = PolySeries::canonical(basis, random_kernel(1000, SEED)).unwrap();
        let r = build(&basis, f.coeffs(), 5000).unwrap();
        let (abs, rel) = relative_pointwise(&r, &f, 100);
        pass &= abs <= 1e-9;
        parts.push(format!("M=1000 N=5000 pointwise {abs:.3e} (<= 1e-9; relative {rel:.1e})"));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let (m, n) = (5, 40);
    let a = random_kernel(m, SEED);
    let r = build(&BasisSpec::Legendre, &a, n).unwrap();
    let d = r.to_dense();
    let mut nonzero_outside = 0;
    for k in 0..d.nrows() {
        for c in 0..d.ncols() {
            if k.abs_diff(c) > m + 1 && d[(k, c)] != 0.0 {
                nonzero_outside += 1;
            }
        }
    }
    let mut sym = 0.0f64;
    for k in m + 1..=n {
        for c in k + 1..=n {
            let rho = symmetry_ratio(&BasisSpec::Legendre, c, k).unwrap();
            sym = sym.max((d[(c, k)] - rho * d[(k, c)]).abs() / d[(k, c)].abs().max(1.0));
        }
    }
    outcome(
        nonzero_outside == 0 && sym <= 1e-12,
        format!("M=5 N=40: {nonzero_outside} nonzeros with |k-n| > 6, symmetry defect {sym:.3e} (<= 1e-12)"),
    )
}

fn renewal_fits() -> (PolySeries, PolySeries) {
    let d = Domain::new(0.0, 2.0).unwrap();
    (
        fit_chebyshev(renewal_f, d, ChopRule::default()).unwrap(),
        fit_chebyshev(renewal_u, d, ChopRule::default()).unwrap(),
    )
}

fn criterion_6() -> Outcome {
    let (f, u) = renewal_fits();
    let h = convolve(&f, &u).unwrap();
    let err = grid(f.domain(), 1000)
        .map(|x| (h.eval(x).unwrap() - (renewal_u(x) - renewal_f(x))).abs())
        .fold(0.0, f64::max);
    outcome(
        f.degree() <= 16 && u.degree() <= 17 && err <= 1e-14,
        format!(
            "fitted degrees ({}, {}) (<= 16, 17), max|R c^u - (u - f)| = {err:.3e} (<= 1e-14)",
            f.degree(),
            u.degree()
        ),
    )
}

fn criterion_7() -> Outcome {
    let (f, _) = renewal_fits();
    let p = VolterraProblem::new(f.clone(), f.clone()).unwrap();
    let errs: Vec<(usize, f64)> = (1..=25)
        .step_by(2)
        .map(|n| {
            let u = solve_second_kind(&p, n).unwrap();
            let e = grid(f.domain(), 1000)
                .map(|x| (u.eval(x).unwrap() - renewal_u(x)).abs())
                .fold(0.0, f64::max);
            (n, e)
        })
        .collect();
    let at17 = errs.iter().find(|e| e.0 == 17).unwrap().1;
    // plateau: within a factor 10 of the best error reached
    let floor = 10.0 * errs.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let mut slow = Vec::new();
    for w in errs.windows(2) {
        if w[0].1 > floor && w[0].1 / w[1].1 < 10.0 {
            slow.push(format!("N={}->{}: {:.1}x", w[0].0, w[1].0, w[0].1 / w[1].1));
        }
    }
    let seq: Vec<String> = errs.iter().map(|e| format!("{:.1e}", e.1)).collect();
    outcome(
        at17 <= 1e-13 && slow.is_empty(),
        format!(
            "N=17 error {at17:.3e} (<= 1e-13); errors N=1,3,..,25: [{}]; steps under 10x before plateau: [{}]",
            seq.join(", "),
            slow.join(", ")
        ),
    )
}

fn criterion_8() -> Outcome {
    let f = fit_laguerre(renewal_f, 2, 1.0).unwrap();
    let g = fit_laguerre(laguerre_g, 54, 1.0).unwrap();
    let h = convolve(&f, &g).unwrap();
    let xs = (0..=50_000)
        .map(|i| 50.0 * i as f64 / 50_000.0)
        .chain((1..=50_000).map(|i| 50.0 + (1e4 - 50.0) * i as f64 / 50_000.0));
    let (mut err, mut at) = (0.0f64, 0.0);
    for x in xs {
        let e = (h.eval(x).unwrap() - laguerre_h(x)).abs();
        if e > err {
            (err, at) = (e, x);
        }
    }
    outcome(
        f.degree() == 2 && g.degree() == 54 && err <= 1e-13,
        format!(
            "degrees ({}, {}), max error over [0, 1e4] {err:.3e} at x = {at:.3} (<= 1e-13)",
            f.degree(),
            g.degree()
        ),
    )
}

fn criterion_9() -> Outcome {
    let bases = [
        BasisSpec::Chebyshev,
        BasisSpec::Legendre,
        BasisSpec::Gegenbauer { lambda: 2.0 },
        BasisSpec::Jacobi { alpha: 2.0, beta: 1.5 },
    ];
    let (m, n) = (10, 100);
    let mut boundary = [0.0f64; 4];
    let (mut symmetry, mut commute, mut recur, mut cross) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for seed in 1..=10u64 {
        let a = random_kernel(m, seed);
        let b = random_kernel(30, seed + 1000);
        let ab = build_chebyshev(&a, b.len() - 1).unwrap().apply(&b).unwrap();
        let ba = build_chebyshev(&b, m).unwrap().apply(&a).unwrap();
        commute = ab.iter().zip(&ba).fold(commute, |e, (x, y)| e.max((x - y).abs()));
        for (i, basis) in bases.iter().enumerate() {
            let r = build(basis, &a, n).unwrap();
            let p = basis.values_at_minus_one(r.nrows()).unwrap();
            for c in 0..r.ncols() {
                let s: f64 = (0..r.nrows()).map(|k| r.get(k, c) * p[k]).sum();
                boundary[i] = boundary[i].max(s.abs());
            }
            for k in m + 1..=n {
                for c in k + 1..=n.min(k + m + 1) {
                    let rho = symmetry_ratio(basis, c, k).unwrap();
                    let (lo, hi) = (r.get(k, c), r.get(c, k));
                    symmetry = symmetry.max((hi - rho * lo).abs() / lo.abs().max(1.0));
                }
            }
        }

        let f = chebyshev_kernel(1 + seed as usize % 6, seed);
        let cols = conv_coeff_columns(&f, 11).unwrap();
        for j in 2..=10 {
            let jf = j as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let int = indefinite_integral_cheb(&cols[j]).unwrap();
            for (k, &got) in cols[j + 1].iter().enumerate() {
                let want = 2.0 * (jf + 1.0) * int.get(k).copied().unwrap_or(0.0)
                    + (jf + 1.0) / (jf - 1.0) * cols[j - 1].get(k).copied().unwrap_or(0.0)
                    + 2.0 * sign / (jf - 1.0) * cols[0].get(k).copied().unwrap_or(0.0);
                recur = recur.max((got - want).abs());
            }
        }

        let l = build(&BasisSpec::Legendre, &a, n).unwrap().to_dense();
        let g = build(&BasisSpec::Gegenbauer { lambda: 0.5 }, &a, n).unwrap().to_dense();
        let j = build(&BasisSpec::Jacobi { alpha: 0.0, beta: 0.0 }, &a, n).unwrap().to_dense();
        cross = cross.max((&l - &g).amax()).max((&l - &j).amax());
    }
    let worst_boundary = boundary.iter().copied().fold(0.0, f64::max);
    let per_basis: Vec<String> = bases.iter().zip(&boundary).map(|(b, e)| format!("{b} {e:.2e}")).collect();
    outcome(
        worst_boundary <= 1e-12 && symmetry <= 1e-12 && commute <= 1e-13 && recur <= 1e-12 && cross <= 1e-14,
        format!(
            "10 seeds, M=10 N=100: boundary [{}] (<= 1e-12), symmetry {symmetry:.2e} (<= 1e-12), \
             Chebyshev commutativity M=10 N=30 {commute:.2e} (<= 1e-13), continuous recurrence {recur:.2e} (<= 1e-12), \
             cross-equality {cross:.2e} (<= 1e-14)",
            per_basis.join(", ")
        ),
    )
}

fn build_seconds(a: &[f64], n: usize) -> f64 {
    // fastest of several runs
    (0..9)
        .map(|_| {
            let start = Instant::now();
            let r = build_chebyshev(a, n).unwrap();
            std::hint::black_box(r);
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_10() -> Outcome {
    let a = random_kernel(100, SEED);
    build_seconds(&a, 1000);
    let t: Vec<f64> = [1000, 2000, 4000].iter().map(|&n| build_seconds(&a, n)).collect();
    let ratios = [t[1] / t[0], t[2] / t[1]];
    outcome(
        ratios.iter().all(|r| (1.6..=2.6).contains(r)),
        format!(
            "M=100 build times N=1000/2000/4000: {:.2e}/{:.2e}/{:.2e} s, ratios {:.2}, {:.2} (in [1.6, 2.6])",
            t[0], t[1], t[2], ratios[0], ratios[1]
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Chebyshev stability", criterion_1),
        ("instability witness", criterion_2),
        ("large Chebyshev build", criterion_3),
        ("Gegenbauer/Jacobi accuracy", criterion_4),
        ("Legendre structure", criterion_5),
        ("renewal convolution", criterion_6),
        ("renewal solve", criterion_7),
        ("Laguerre convolution", criterion_8),
        ("property suites", criterion_9),
        ("build complexity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
