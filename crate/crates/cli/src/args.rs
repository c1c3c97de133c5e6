use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "antisym", version, about = "Entanglement bounds for the d×d antisymmetric state")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every randomized computation.
    #[arg(long, global = true, env = "ANTISYM_SEED", default_value_t = 0)]
    pub seed: u64,

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
    /// Closed-form key, squashed-entanglement, cost and negativity bounds.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
    },
    /// Exact value of a reduced purity program.
    Zeta(ZetaArgs),
    /// Exact check of the (3/4)^n dual certificate.
    Certificate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        /// Lower z just past feasibility before checking.
        #[arg(long)]
        tampered: bool,
    },
    /// Coefficient matrix T_d, optionally compared with the numeric block extraction.
    Tmatrix {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        compare: bool,
    },
    /// Numerical oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Runs every acceptance check and writes a JSON report.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct ZetaSourceArgs {
    #[arg(long)]
    pub d: Option<usize>,
    /// Use T_∞.
    #[arg(long)]
    pub inf: bool,
    /// Use the two-symbol program.
    #[arg(long)]
    pub simplified: bool,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub source: ZetaSourceArgs,
}

#[derive(Debug, Args)]
pub struct OptimizerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Maximum purity of tr_B ψ over ψ in the n-fold tensor power of ∧²(C^d).
    Purity(OptimizerArgs),
    /// Maximum largest eigenvalue of tr_B ψ over the same set.
    Opnorm(OptimizerArgs),
    /// Maximum overlap of a product vector with the n-fold antisymmetric projector.
    Separable(OptimizerArgs),
    /// Trace norm of the partially transposed antisymmetric state.
    Negativity {
        #[arg(long)]
        d: usize,
    },
    /// Direct PPT test of a mixture of isotypic states against the T-matrix sign test.
    Ppt {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Comma-separated weights over ([1,1,1,1], [2,2], [2,1,1])^n.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// key=value file overriding tolerances, size caps, seeds and paths.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_d: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}
