//! `hcyc`: verify Hopf-cyclic structures, compute truncated cyclic
//! cohomology and evaluate pairings, with JSON reports on stdout.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hcyc", version, about = "Exact Hopf-cyclic cohomology toolkit")]
pub struct Cli {
    /// Directory of user algebra-definition files (*.json).
    #[arg(long, global = true)]
    pub catalog_dir: Option<PathBuf>,
    /// Add wall-clock duration to reports. Output is then no longer
    /// byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Truncated cyclic cohomology dimensions.
    Hc(HcArgs),
    /// Pair a cyclic cocycle with an idempotent.
    Pair(PairArgs),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// List built-in and user entries.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the definition file of an entry.
    Export { algebra: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Mpi,
    Lambda,
    Action,
    Ribbon,
    Square,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Catalog name or path to a definition file.
    pub algebra: String,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Weight cutoff for monomial checks.
    #[arg(long, default_value_t = 3)]
    pub cutoff: u32,
    /// Highest cyclic level for Λ-relation and characteristic-map checks.
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Modular pair as `character,group-like`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Restrict the ribbon suite to one shipped R-matrix.
    #[arg(long)]
    pub r_matrix: Option<String>,
    /// Square roots for the square suite as `group-like,character`,
    /// overriding the shipped ones.
    #[arg(long)]
    pub roots: Option<String>,
    /// Weight of random samples in the Λ suite.
    #[arg(long)]
    pub weight: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Lie,
}

#[derive(Args, Debug)]
pub struct HcArgs {
    pub algebra: String,
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Keep monomials of total weight at most this.
    #[arg(long)]
    pub weight: Option<u32>,
    /// Use the piece of weight exactly `--weight` instead.
    #[arg(long, requires = "weight")]
    pub graded: bool,
    /// Cyclic cohomology of the underlying algebra.
    #[arg(long)]
    pub algebra_mode: bool,
    /// Use all cochains instead of the normalized ones.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum)]
    pub oracle: Option<Oracle>,
    /// Write the total differentials as coordinate text files.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub algebra: String,
    /// `trace` or `area-cocycle`.
    pub cocycle: String,
    /// Idempotent as an expression in the algebra.
    pub idempotent: String,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
