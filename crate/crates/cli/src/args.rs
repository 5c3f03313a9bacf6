use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use summa_core::analysis::geometric_grid;
use summa_core::FamilySpec;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "summa", version, about = "Summability experiments for Jacobi and Laguerre expansions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate P_n^(α,β) or L_n^(α) with the asymptotic main term and residual.
    Eval(EvalArgs),
    /// Scan weighted L^q norms over degrees and fit the growth exponent.
    Normscan(NormscanArgs),
    /// Cesàro and Riesz means of a test function over (x, N) grids.
    Sum(SumArgs),
    /// Build a gliding-hump witness and report its coefficient growth and means.
    Witness(WitnessArgs),
    /// Amplitude recovery from ∫_E |F_n|² for F_n(θ) = √n P_n(cos θ).
    CantorLebesgue(CantorArgs),
    /// Critical indices and divergent δ-ranges.
    Critical(CriticalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Jacobi,
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "jacobi")]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Ignored for Laguerre.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec, CliError> {
        Ok(match self.family {
            FamilyKind::Jacobi => FamilySpec::jacobi(self.alpha, self.beta)?,
            FamilyKind::Laguerre => FamilySpec::laguerre(self.alpha)?,
        })
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        let mut v = vec![
            ("family".into(), format!("{:?}", self.family).to_lowercase()),
            ("alpha".into(), self.alpha.to_string()),
        ];
        if self.family == FamilyKind::Jacobi {
            v.push(("beta".into(), self.beta.to_string()));
        }
        v
    }
}

/// Degree grid: explicit list, arithmetic range, or geometric range.
#[derive(Debug, Args)]
pub struct NGridArgs {
    /// Explicit degrees, comma separated.
    #[arg(long = "n", value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub n_step: usize,
    /// Points per doubling of a geometric grid from --n-min to --n-max.
    #[arg(long)]
    pub n_geom: Option<usize>,
}

impl NGridArgs {
    /// The grid, or `default` when no grid flag was given.
    pub fn resolve(&self, default: Option<Vec<usize>>) -> Result<Vec<usize>, CliError> {
        let grid = if !self.n.is_empty() {
            self.n.clone()
        } else if let (Some(lo), Some(hi)) = (self.n_min, self.n_max) {
            if hi < lo {
                return Err(CliError::Invalid(format!("--n-max {hi} is below --n-min {lo}")));
            }
            match self.n_geom {
                Some(0) => return Err(CliError::Invalid("--n-geom must be positive".into())),
                Some(k) if lo == 0 => return Err(CliError::Invalid(format!("geometric grid needs --n-min ≥ 1 (k = {k})"))),
                Some(k) => geometric_grid(lo, hi, k),
                None if self.n_step == 0 => return Err(CliError::Invalid("--n-step must be positive".into())),
                None => (lo..=hi).step_by(self.n_step).collect(),
            }
        } else if self.n_min.is_some() || self.n_max.is_some() {
            return Err(CliError::Invalid("--n-min and --n-max must be given together".into()));
        } else {
            default.unwrap_or_default()
        };
        if grid.is_empty() {
            return Err(CliError::Invalid("degree grid is empty".into()));
        }
        Ok(grid)
    }

    pub fn echo(grid: &[usize]) -> (String, String) {
        let s: Vec<String> = grid.iter().map(usize::to_string).collect();
        ("n_grid".into(), s.join(","))
    }
}

/// Sample points: explicit list or `start:stop:count`.
#[derive(Debug, Args)]
pub struct XGridArgs {
    /// Explicit points, comma separated.
    #[arg(long = "x", value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    /// Evenly spaced points as start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Option<String>,
}

impl XGridArgs {
    pub fn resolve(&self, default: Option<Vec<f64>>) -> Result<Vec<f64>, CliError> {
        let xs = if !self.x.is_empty() {
            self.x.clone()
        } else if let Some(spec) = &self.x_grid {
            parse_linspace(spec)?
        } else {
            default.unwrap_or_default()
        };
        if xs.is_empty() {
            return Err(CliError::Invalid("x grid is empty".into()));
        }
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Invalid("x grid must be finite".into()));
        }
        Ok(xs)
    }

    pub fn echo(xs: &[f64]) -> (String, String) {
        let s: Vec<String> = xs.iter().map(f64::to_string).collect();
        ("x_grid".into(), s.join(","))
    }
}

fn parse_linspace(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Invalid(format!("--x-grid expects start:stop:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, k] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    Ok(match k {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect(),
    })
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub n: NGridArgs,
    #[command(flatten)]
    pub x: XGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NormscanArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub q: f64,
    /// Weight exponent of (1−x)^r (Jacobi only).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Slope tolerance for the pass/fail verdict.
    #[arg(long, default_value_t = 0.07)]
    pub tol: f64,
    #[command(flatten)]
    pub n: NGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFunction {
    /// f ≡ 1
    One,
    /// f(x) = x
    X,
    /// f(x) = x³
    Cube,
    /// e^x (Jacobi) or e^{−x} (Laguerre)
    Exp,
    /// |x| (Jacobi) or |x − 1| (Laguerre)
    Abs,
    /// indicator of [0, 1]
    Step,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value = "one", conflicts_with = "witness")]
    pub function: TestFunction,
    /// Sum the expansion of a witness stored as JSON instead of a test function.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Relative quadrature tolerance for the coefficients.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub n: NGridArgs,
    #[command(flatten)]
    pub x: XGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    InverseSquare,
    MarginSplit,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub delta: f64,
    /// Number of levels K.
    #[arg(long)]
    pub levels: usize,
    /// Starting degree n_1.
    #[arg(long = "n1", alias = "n-min", default_value_t = 8)]
    pub n1: usize,
    #[arg(long, default_value_t = 2)]
    pub lacunarity: usize,
    #[arg(long, default_value_t = 4096)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value = "inverse-square")]
    pub schedule: Schedule,
    /// Build even when (p, δ) lies outside the divergence range.
    #[arg(long)]
    pub no_enforce: bool,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Spacing of the N grid for the means (N = step, 2·step, …, n_K).
    #[arg(long, default_value_t = 1)]
    pub n_step: usize,
    #[command(flatten)]
    pub x: XGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CantorArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// θ-intervals as a:b pairs, comma separated.
    #[arg(long, default_value = "0.7:1.4,2.0:2.6")]
    pub intervals: String,
    #[command(flatten)]
    pub n: NGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
