//! The `voltconv` command line.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 I/O or parse failure,
//! 4 numerical failure.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basis::BasisSpec;
use crate::convmat::{build, build_chebyshev, build_chebyshev_naive};
use crate::error::Error;
use crate::io::{fmt_g17, matrix_to_csv, read_series, series_to_csv, series_to_json};
use crate::laguerre::{build_laguerre, fit_laguerre};
use crate::oracle::{
    compare_dense, compare_entrywise, conv_coeff_columns, pointwise_check, ErrorReport, ReportMeta,
    COEFF_ORACLE_CAP,
};
use crate::rng::random_kernel;
use crate::series::{fit_chebyshev, ChopRule, Domain, PolySeries};
use crate::volterra::{convolve, residual, solve_second_kind, VolterraProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "voltconv", version, about = "Volterra convolution matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit an expression in `x` as a Chebyshev or weighted Laguerre series
    Fit(FitArgs),
    /// Write the convolution matrix of a kernel
    Build(BuildArgs),
    /// Convolve two series
    Convolve(ConvolveArgs),
    /// Solve u = s + f * u at degree N
    Solve(SolveArgs),
    /// Compare a seeded build against the quadrature oracle
    Verify(VerifyArgs),
    /// Naive versus stable Chebyshev build on the same kernel
    Instability(InstabilityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Chebyshev,
    Legendre,
    Gegenbauer,
    Jacobi,
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub basis: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Laguerre weight rate s in exp(-s x) L_n(x)
    #[arg(long)]
    pub rate: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(long)]
    pub expr: String,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    /// Relative chopping tolerance (Chebyshev)
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Fixed degree (Laguerre)
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    /// Kernel series; without it a seeded random kernel of degree M is used
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(short = 'M')]
    pub m: Option<usize>,
    #[arg(short = 'N')]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub kernel: PathBuf,
    #[arg(long)]
    pub rhs: PathBuf,
    #[arg(short = 'N')]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(short = 'M')]
    pub m: usize,
    #[arg(short = 'N')]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sample column functions instead of comparing every entry
    #[arg(long)]
    pub pointwise: bool,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InstabilityArgs {
    #[command(flatten)]
    pub basis: BasisArgs,
    #[arg(short = 'M', default_value_t = 10)]
    pub m: usize,
    #[arg(short = 'N', default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory receiving naive.csv and stable.csv
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Failure with its exit code and one-line message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => EXIT_IO,
            Error::Singular { .. } | Error::NonConvergence { .. } | Error::NonResolution { .. } => {
                EXIT_NUMERIC
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl BasisArgs {
    /// Basis from the flags, rejecting parameters that do not belong to it.
    pub fn resolve(&self) -> CliResult<Option<BasisSpec>> {
        let Some(family) = self.basis else {
            if self.lambda.is_some() || self.alpha.is_some() || self.beta.is_some() || self.rate.is_some() {
                return Err(Failure::usage("basis parameters given without --basis"));
            }
            return Ok(None);
        };
        let stray = |flag: &str, given: bool| -> CliResult<()> {
            if given {
                Err(Failure::usage(format!("--{flag} does not apply to this basis")))
            } else {
                Ok(())
            }
        };
        let need = |flag: &str, v: Option<f64>| -> CliResult<f64> {
            v.ok_or_else(|| Failure::usage(format!("this basis needs --{flag}")))
        };
        let spec = match family {
            Family::Chebyshev | Family::Legendre | Family::Laguerre => {
                stray("lambda", self.lambda.is_some())?;
                stray("alpha", self.alpha.is_some())?;
                stray("beta", self.beta.is_some())?;
                match family {
                    Family::Chebyshev => BasisSpec::Chebyshev,
                    Family::Legendre => BasisSpec::Legendre,
                    _ => BasisSpec::WeightedLaguerre {
                        rate: self.rate.unwrap_or(0.5),
                    },
                }
            }
            Family::Gegenbauer => {
                stray("alpha", self.alpha.is_some())?;
                stray("beta", self.beta.is_some())?;
                BasisSpec::Gegenbauer {
                    lambda: need("lambda", self.lambda)?,
                }
            }
            Family::Jacobi => {
                stray("lambda", self.lambda.is_some())?;
                BasisSpec::Jacobi {
                    alpha: need("alpha", self.alpha)?,
                    beta: need("beta", self.beta)?,
                }
            }
        };
        if family != Family::Laguerre {
            stray("rate", self.rate.is_some())?;
        }
        spec.validate()?;
        Ok(Some(spec))
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(e).into()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io(e).into())
        }
    }
}

fn load(path: &Path) -> CliResult<PolySeries> {
    read_series(path).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn series_text(s: &PolySeries, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => series_to_json(s)? + "\n",
        Format::Csv => series_to_csv(s)?,
    })
}

fn csv_only(format: Format, what: &str) -> CliResult<()> {
    if format == Format::Json {
        return Err(Failure::usage(format!("{what} writes CSV only")));
    }
    Ok(())
}

fn fit(args: &FitArgs) -> CliResult<()> {
    let basis = args.basis.resolve()?.unwrap_or(BasisSpec::Chebyshev);
    let expr: meval::Expr = args
        .expr
        .parse()
        .map_err(|e| Failure::usage(format!("bad expression: {e}")))?;
    let f = expr
        .bind("x")
        .map_err(|e| Failure::usage(format!("bad expression: {e}")))?;
    let series = match basis {
        BasisSpec::Chebyshev => {
            if args.degree.is_some() {
                return Err(Failure::usage("--degree applies to Laguerre fits"));
            }
            let rule = ChopRule {
                rel_tol: args.tol,
                ..ChopRule::default()
            };
            fit_chebyshev(f, Domain::new(args.a, args.b)?, rule)?
        }
        BasisSpec::WeightedLaguerre { rate } => {
            let degree = args
                .degree
                .ok_or_else(|| Failure::usage("Laguerre fits need --degree"))?;
            fit_laguerre(f, degree, rate)?
        }
        other => return Err(Error::UnsupportedBasis(other.to_string()).into()),
    };
    emit(args.out.as_deref(), &series_text(&series, args.format)?)
}

fn build_cmd(args: &BuildArgs) -> CliResult<()> {
    let flagged = args.basis.resolve()?;
    let kernel = match (&args.input, args.m) {
        (Some(_), Some(_)) => return Err(Failure::usage("give either --in or -M, not both")),
        (None, None) => return Err(Failure::usage("need a kernel: --in FILE or -M with --seed")),
        (Some(path), None) => {
            let k = load(path)?;
            if flagged.is_some_and(|b| b != *k.basis()) {
                return Err(Failure::usage(format!(
                    "--basis disagrees with the kernel file ({})",
                    k.basis()
                )));
            }
            k
        }
        (None, Some(m)) => {
            let basis = flagged.unwrap_or(BasisSpec::Chebyshev);
            let coeffs = random_kernel(m, args.seed);
            if basis.is_finite_interval() {
                PolySeries::canonical(basis, coeffs)?
            } else {
                PolySeries::new(basis, Domain::HALF_LINE, coeffs)?
            }
        }
    };
    let dense = if kernel.basis().is_finite_interval() {
        build(kernel.basis(), kernel.coeffs(), args.n)?.to_dense()
    } else {
        build_laguerre(kernel.coeffs(), args.n)?.to_dense()
    };
    let text = match args.format {
        Format::Csv => matrix_to_csv(&dense),
        Format::Json => {
            let rows: Vec<Vec<f64>> = dense
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect();
            let doc = serde_json::json!({
                "basis": kernel.basis(),
                "rows": dense.nrows(),
                "cols": dense.ncols(),
                "data": rows,
            });
            serde_json::to_string(&doc).map_err(Error::from)? + "\n"
        }
    };
    emit(args.out.as_deref(), &text)
}

fn convolve_cmd(args: &ConvolveArgs) -> CliResult<()> {
    let f = load(&args.f)?;
    let g = load(&args.g)?;
    let h = convolve(&f, &g)?;
    emit(args.out.as_deref(), &series_text(&h, args.format)?)
}

fn solve_cmd(args: &SolveArgs) -> CliResult<()> {
    let kernel = load(&args.kernel)?;
    let rhs = load(&args.rhs)?;
    let problem = VolterraProblem::new(kernel, rhs)?;
    let u = solve_second_kind(&problem, args.n)?;
    let r = residual(&problem, &u, 1000)?;
    emit(args.out.as_deref(), &series_text(&u, args.format)?)?;
    eprintln!("residual max_abs {}", fmt_g17(r));
    Ok(())
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    csv_only(args.format, "verify")?;
    let basis = args
        .basis
        .resolve()?
        .ok_or_else(|| Failure::usage("verify needs --basis"))?;
    if !basis.is_finite_interval() {
        return Err(Error::UnsupportedBasis(basis.to_string()).into());
    }
    let kernel = PolySeries::canonical(basis, random_kernel(args.m, args.seed))?;
    let built = build(&basis, kernel.coeffs(), args.n)?;
    let report = if args.pointwise || args.m + args.n > COEFF_ORACLE_CAP {
        if args.samples == 0 {
            return Err(Failure::usage("--samples must be positive"));
        }
        pointwise_check(&built, &kernel, args.samples, args.seed)?
    } else {
        let oracle = conv_coeff_columns(&kernel, args.n)?;
        let mut r = compare_entrywise(&built, &oracle)?;
        r.meta.seed = Some(args.seed);
        r
    };
    emit(args.out.as_deref(), &report.to_csv())?;
    eprintln!("max_abs {}", fmt_g17(report.max_abs));
    Ok(())
}

/// Naive and stable reports for the seeded Chebyshev kernel.
pub fn instability_reports(m: usize, n: usize, seed: u64) -> crate::Result<(ErrorReport, ErrorReport)> {
    let kernel = PolySeries::canonical(BasisSpec::Chebyshev, random_kernel(m, seed))?;
    let oracle = conv_coeff_columns(&kernel, n)?;
    let naive = build_chebyshev_naive(kernel.coeffs(), n)?;
    let meta = ReportMeta::new(BasisSpec::Chebyshev, m, n).with_seed(seed);
    let naive = compare_dense(&naive, m, &oracle, meta.clone().with_label("naive"))?;
    let mut stable = compare_entrywise(&build_chebyshev(kernel.coeffs(), n)?, &oracle)?;
    stable.meta = meta.with_label("stable");
    Ok((naive, stable))
}

fn instability(args: &InstabilityArgs) -> CliResult<()> {
    csv_only(args.format, "instability")?;
    if args.basis.resolve()?.is_some_and(|b| b != BasisSpec::Chebyshev) {
        return Err(Failure::usage("instability compares Chebyshev builders only"));
    }
    let (naive, stable) = instability_reports(args.m, args.n, args.seed)?;
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(Error::from)?;
            fs::write(dir.join("naive.csv"), naive.to_csv()).map_err(Error::from)?;
            fs::write(dir.join("stable.csv"), stable.to_csv()).map_err(Error::from)?;
        }
        None => emit(None, &(naive.to_csv() + &stable.to_csv()))?,
    }
    eprintln!("naive max_abs {}", fmt_g17(naive.max_abs));
    eprintln!("stable max_abs {}", fmt_g17(stable.max_abs));
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Fit(a) => fit(a),
        Command::Build(a) => build_cmd(a),
        Command::Convolve(a) => convolve_cmd(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Instability(a) => instability(a),
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
