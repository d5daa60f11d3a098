use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ordmoment",
    version,
    about = "Moments of order statistics and their closed-form bounds"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for Monte Carlo streams.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Quadrature,
    Oracle,
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate E|X_{i:n}|^k for one law.
    Moment(MomentArgs),
    /// Evaluate the closed-form bound and classify the rank.
    Bound(BoundArgs),
    /// Sweep laws, sample sizes and exponents; check moment ≤ bound.
    Verify(VerifyArgs),
    /// Check every proof inequality over a (ρ, n) grid.
    ProofSteps(ProofStepsArgs),
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    /// Zoo name or path to a `value probability` file.
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub k: f64,
    #[arg(long, value_enum, default_value = "quadrature")]
    pub method: MethodArg,
    /// Monte Carlo repetitions.
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub dist: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub k: f64,
    #[arg(long)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Comma-separated zoo names or file paths.
    #[arg(long)]
    pub dist: Option<String>,

    /// Comma-separated sample sizes; `a..b` denotes an inclusive range.
    #[arg(long = "n")]
    pub n_values: Option<String>,

    /// Comma-separated `k:delta` pairs.
    #[arg(long)]
    pub pairs: Option<String>,

    /// Monte Carlo repetitions per cell; 0 disables the columns.
    #[arg(long)]
    pub mc_reps: Option<usize>,

    /// Multiplies C(ρ); values below 1 exercise the failure path.
    #[arg(long, hide = true)]
    pub c_scale: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ProofStepsArgs {
    /// Comma-separated ρ values.
    #[arg(long)]
    pub rho: Option<String>,

    /// Comma-separated sample sizes; `a..b` denotes an inclusive range.
    #[arg(long = "n")]
    pub n_values: Option<String>,
}
