use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the directory reports go to when `--output`
/// is absent.
pub const OUTPUT_DIR_ENV: &str = "CROSSRC_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "crossrc", version, about = "Exact finite-stage audits of an AH algebra with a finite group action")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize the construction: dimension sequence, fibers, materialization.
    Build(BuildArgs),
    /// Run the invariant suite; exit status 0 iff every check passes.
    Verify(VerifyArgs),
    /// Radius-of-comparison upper-bound table.
    RcTable(TableArgs),
    /// Non-comparison certificate for a given lambda.
    Certificate(CertificateArgs),
    /// Crossed-product identities, trace, ψ-map and fixed points at one stage.
    CrossedReport(CrossedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Group spec: Z<n>, D<n>, S<n>, Q8, products like Z2xZ2, or a JSON table.
    #[arg(long, default_value = "Z2")]
    pub group: String,
    /// Exact rational in (0, 1/|G|), e.g. 1/4.
    #[arg(long)]
    pub eta: String,
    #[arg(long, default_value_t = 3)]
    pub stages: usize,
    /// Largest matrix dimension that is materialized.
    #[arg(long, default_value_t = 4096)]
    pub matrix_cap: usize,
    /// Output file; defaults to $CROSSRC_OUTPUT_DIR/<command>.<ext>, else stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add decimal approximations next to exact rationals.
    #[arg(long)]
    pub decimals: bool,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub seed: u64,
    /// Random functions per stage in the equivariance check.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Sample points or random elements per check.
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    /// Run only these checks (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Record wall-clock time per check (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CertificateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Exact rational with 0 <= lambda < eta.
    #[arg(long)]
    pub lambda: String,
    #[arg(long, default_value_t = 10)]
    pub horizon: usize,
    /// Stop searching for an admissible stage after this many stages.
    #[arg(long, default_value_t = 16)]
    pub max_stages: usize,
}

#[derive(Debug, Args)]
pub struct CrossedArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stage whose action is used.
    #[arg(long, default_value_t = 0)]
    pub stage: usize,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Probability that an entry of a random element is nonzero.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
}
