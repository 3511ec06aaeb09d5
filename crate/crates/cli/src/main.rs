//! `distkit` — command-line front end for the distribution toolkit:
//! sampling, maximum-likelihood fitting, Gaussian-mixture EM, kernel
//! density estimation, histograms, and a mixture-evaluation benchmark.
//!
//! Every command is bit-deterministic for a fixed `--seed` (benchmark
//! timings excepted). Exit codes: 2 for invalid parameters or usage, 3 for
//! degenerate data, 4 for non-positive data where positive is required, 5
//! for empty component lists, 6 for kernels without a characteristic
//! function, 1 for everything else.

mod bench;
mod commands;
mod data;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "distkit", version, about = "Probability distribution toolkit")]
struct Cli {
    /// Seed for everything stochastic (sampling, random initializations)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Write the primary output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Serialization of the primary output (each command has a natural
    /// default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Global options shared by every subcommand.
pub struct Globals {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random samples from a distribution
    Sample(SampleArgs),
    /// Fit a distribution to CSV data by maximum likelihood
    Fit(FitArgs),
    /// Fit a multivariate-normal mixture by expectation-maximization
    Em(EmArgs),
    /// Kernel density estimate on a uniform grid
    Kde(KdeArgs),
    /// Histogram edges and counts
    Hist(HistArgs),
    /// Time mixture pdf evaluation against a manual loop
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct SampleArgs {
    /// Distribution family (e.g. Normal, Gamma, Poisson)
    #[arg(long)]
    pub dist: String,

    /// Comma-separated parameters in the family's canonical order
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,

    /// Number of draws
    #[arg(long)]
    pub n: usize,
}

#[derive(Args)]
pub struct FitArgs {
    /// Family to fit: a univariate family, MvNormal, or Product
    #[arg(long)]
    pub dist: String,

    /// CSV file of observations
    #[arg(long)]
    pub input: PathBuf,

    /// Data column (name or 1-based index) for univariate fits
    #[arg(long)]
    pub col: Option<String>,

    /// Comma-separated columns for MvNormal/Product fits; defaults to all
    /// columns (minus a detected class label)
    #[arg(long)]
    pub cols: Option<String>,

    /// Column of non-negative observation weights
    #[arg(long)]
    pub weight_col: Option<String>,

    /// Pin one Normal parameter, e.g. mu=2 or sigma=1.5
    #[arg(long)]
    pub fix: Option<String>,

    /// Subtract this constant from the data before fitting
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,

    /// Marginal families for --dist Product, e.g. Normal,LogNormal
    #[arg(long)]
    pub marginals: Option<String>,

    /// Starting parameters for --dist Product as mu1,sigma1,mu2,sigma2,...;
    /// omitted means a seeded random start
    #[arg(long, allow_hyphen_values = true)]
    pub init: Option<String>,

    /// Iteration cap for gradient-ascent fits
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Args)]
pub struct EmArgs {
    /// CSV file of observations
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated feature columns; defaults to all columns (minus a
    /// detected class label)
    #[arg(long)]
    pub cols: Option<String>,

    /// Number of mixture components
    #[arg(long)]
    pub k: usize,

    /// Iteration cap (default 500)
    #[arg(long)]
    pub max_iter: Option<usize>,

    /// Stop once the log-likelihood improves by at most this (default 1e-4)
    #[arg(long)]
    pub tol: Option<f64>,

    /// Columns to log-transform before fitting (must be among --cols)
    #[arg(long)]
    pub log_cols: Option<String>,

    /// Write the per-iteration log-likelihood trace to this CSV file
    #[arg(long)]
    pub trace: Option<PathBuf>,

    /// Write the final responsibilities matrix to this CSV file
    #[arg(long)]
    pub responsibilities: Option<PathBuf>,
}

#[derive(Args)]
pub struct KdeArgs {
    /// CSV file of observations
    #[arg(long)]
    pub input: PathBuf,

    /// Data column (name or 1-based index)
    #[arg(long)]
    pub col: String,

    /// Second column for a two-dimensional estimate
    #[arg(long)]
    pub col2: Option<String>,

    /// Bandwidth: one value, or hx,hy for two dimensions (default Silverman)
    #[arg(long, allow_hyphen_values = true)]
    pub bandwidth: Option<String>,

    /// Kernel family for one-dimensional estimates (default Gaussian); must
    /// have a characteristic function
    #[arg(long)]
    pub kernel: Option<String>,

    /// Comma-separated kernel parameters, e.g. -0.5,0.5 for Triangular
    #[arg(long, allow_hyphen_values = true)]
    pub kparams: Option<String>,

    /// Grid nodes (per axis in two dimensions)
    #[arg(long)]
    pub gridsize: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum ClosedArg {
    Left,
    Right,
}

#[derive(Args)]
pub struct HistArgs {
    /// CSV file of observations
    #[arg(long)]
    pub input: PathBuf,

    /// Data column (name or 1-based index)
    #[arg(long)]
    pub col: String,

    /// Number of equal-width bins over the data range (default 10)
    #[arg(long)]
    pub bins: Option<usize>,

    /// Explicit comma-separated bin edges (strictly increasing)
    #[arg(long, allow_hyphen_values = true)]
    pub edges: Option<String>,

    /// Which side of each bin is closed
    #[arg(long, value_enum, default_value_t = ClosedArg::Right)]
    pub closed: ClosedArg,

    /// Column of non-negative observation weights
    #[arg(long)]
    pub weight_col: Option<String>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Timed evaluations per case (split into batches; the median batch
    /// rate is reported)
    #[arg(long, default_value_t = 100_000)]
    pub evals: u64,

    /// Run the correctness gate and report values only, skipping timings
    #[arg(long)]
    pub gate_only: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = Globals {
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format,
    };
    let result = match &cli.command {
        Command::Sample(args) => commands::sample(args, &globals),
        Command::Fit(args) => commands::fit(args, &globals),
        Command::Em(args) => commands::em(args, &globals),
        Command::Kde(args) => commands::kde_cmd(args, &globals),
        Command::Hist(args) => commands::hist(args, &globals),
        Command::Bench(args) => bench::bench(args, &globals),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
