use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Bohr radii, refined radius tables and inequality checks")]
pub struct Cli {
    /// Output format; json emits one object per line.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single radius.
    #[command(subcommand)]
    Radius(RadiusCmd),
    /// Recompute a published table of refined radii.
    Table(TableArgs),
    /// Check an inequality or its sharpness.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Evaluate a special function or a certified series.
    #[command(subcommand)]
    Eval(EvalCmd),
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be a positive finite number, got {v}"))
    }
}

#[derive(Debug, Args)]
pub struct GammaArg {
    /// Domain parameter γ ∈ [0, 1).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
}

#[derive(Debug, Args)]
pub struct RootTol {
    /// Bisection tolerance.
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RefinedArgs {
    /// Weight λ(r), e.g. "r/(1-r)^2" or "1/2 + exp(r)".
    #[arg(long)]
    pub lambda: String,
    #[command(flatten)]
    pub tol: RootTol,
}

#[derive(Debug, Subcommand)]
pub enum RadiusCmd {
    /// (1 + γ)/(3 + γ).
    Classical(GammaArg),
    /// Refined radius of the log-derivative family of convex maps.
    RefinedLk(RefinedArgs),
    /// Refined radius of the univalent class.
    RefinedS(RefinedArgs),
    /// Radius of the Laplace-majorant inequality.
    Laplace {
        #[command(flatten)]
        gamma: GammaArg,
        #[command(flatten)]
        tol: RootTol,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    T1,
    T2,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub table: TableName,
    #[command(flatten)]
    pub tol: RootTol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Lk,
    S,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub gamma: GammaArg,
    /// Parameter a ∈ (0, 1) of the extremal family f₀(a, γ).
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub gamma: GammaArg,
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    /// Comma-separated values of a to try.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub a_grid: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Fourier majorant of f₀(a, γ) against 1/(1 − r).
    Fourier(PointArgs),
    /// Laplace majorant of f₀(a, γ) against (1/r) ln(1/(1 − r)).
    Laplace(PointArgs),
    /// Refined sum of the class's extremal function against 1.
    Refined {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
    /// Coefficient bound |A_n| ≤ (1 − |A_0|²)/(1 + γ) for f₀(a, γ).
    LemmaA {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// Largest coefficient index checked.
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Search for f₀(a, γ) violating the Fourier bound above the classical radius.
    SharpnessFourier(SweepArgs),
    /// Laplace ratio at the largest a of the grid against 1 − eps.
    SharpnessLaplace {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = bohr_core::verify::DEFAULT_SHARPNESS_EPS, value_parser = positive)]
        eps: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    Majorant,
    Refined,
    Fourier,
    Laplace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Koebe,
    Lk,
    F0,
    List,
}

#[derive(Debug, Args)]
pub struct SeriesTol {
    /// Bound on the dropped tail.
    #[arg(long, default_value_t = 1e-13, value_parser = positive)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum EvalCmd {
    /// Li₂(x) for x ∈ [0, 1].
    Dilog {
        /// Argument of Li₂.
        #[arg(long, alias = "x", allow_negative_numbers = true)]
        r: f64,
        #[command(flatten)]
        tol: SeriesTol,
    },
    /// A majorant-type series of a coefficient family at r.
    Sum {
        #[arg(long, value_enum, default_value_t = SeriesArg::Majorant)]
        series: SeriesArg,
        /// Coefficient family; defaults to `list` when --coeffs is given.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Comma-separated coefficient moduli |a_0|, |a_1|, ….
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Option<Vec<f64>>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Weight λ(r) for the refined series.
        #[arg(long)]
        lambda: Option<String>,
        /// First index of the squared series (1 or 2).
        #[arg(long, default_value_t = 2)]
        square_start: u32,
        #[command(flatten)]
        tol: SeriesTol,
        #[arg(long, default_value_t = bohr_core::sums::DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
}
