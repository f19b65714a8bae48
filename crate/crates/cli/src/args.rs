use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "convball",
    version,
    about = "Convergence radii, iteration traces and order estimates for multi-step root finders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convergence radii for given continuity constants.
    Radius(RadiusArgs),
    /// Run an iteration and print its trace.
    Solve(SolveArgs),
    /// Recompute the published radius tables and compare.
    Reproduce(ReproduceArgs),
    /// Sample the continuity constants of a problem around its root.
    Estimate(EstimateArgs),
    /// Computational order of convergence at extended precision.
    Order(OrderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Lipschitz,
    Hoelder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Newton,
    Fifth,
    Seventh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Logpoly,
    Planck,
    Hammerstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    /// Center constant (psi0 or kappa0).
    #[arg(long)]
    pub c0: f64,
    /// Full constant (psi or kappa).
    #[arg(long)]
    pub c: f64,
    /// Hoelder exponent in (0, 1]; Lipschitz constants only accept 1.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    /// Bisection width for the radii.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct ProblemArgs {
    #[arg(long, value_enum, group = "source")]
    pub example: Option<ExampleArg>,
    /// TOML problem definition.
    #[arg(long, group = "source")]
    pub problem: Option<PathBuf>,
    /// Quadrature nodes for the Hammerstein example.
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Starting point as a comma list; a single value is broadcast.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = 50)]
    pub max_iter: usize,
    /// Significant decimal digits; 16 uses native doubles.
    #[arg(long, default_value_t = 16)]
    pub precision: u32,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    /// Check the per-step error bounds against the given constants.
    #[arg(long = "verify-bounds", requires_all = ["class", "c0", "c"])]
    pub verify_bounds: bool,
    #[arg(long, value_enum)]
    pub class: Option<ClassArg>,
    #[arg(long)]
    pub c0: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub table: TableArg,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
    #[arg(long, default_value_t = 0.01)]
    pub rtol: f64,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Sup-norm radius of the sampling ball around the root.
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    /// Significant decimal digits; below 30 the error sequence is usually too short.
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: Format,
}
