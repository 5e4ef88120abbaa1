use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "itl",
    version,
    about = "Interval relations on ω and Tukey-connection checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Registered systems and connections.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate one relation on a pair of objects.
    CheckRel(CheckRel),
    /// Count profile of a stream against a set, partition or measure.
    Profile(ProfileArgs),
    /// Run connection suites.
    Verify(Verify),
    /// Reproduce one of the built-in remarks.
    Demo {
        #[arg(value_enum)]
        id: DemoId,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantArg {
    Forall,
    Exists,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum DemoId {
    Forall0,
    Col1Pair,
    MeasureSumDegenerate,
}

/// Objects are inline JSON, or `@path` to read a file.
#[derive(Debug, Args)]
pub struct CheckRel {
    #[arg(long)]
    pub rel: String,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    #[arg(long)]
    pub k: Option<u64>,
    /// rational such as `1/2`
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, value_enum)]
    pub quant: Option<QuantArg>,
    #[arg(long, default_value_t = 4096)]
    pub horizon: u64,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub x: String,
    /// raw values to print
    #[arg(long, default_value_t = 16)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct Verify {
    /// connection id, optionally with parameters: `vojtas_forall_k{k=2}`
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub lemma: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 500)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 4096)]
    pub horizon: u64,
    #[arg(long, default_value_t = 25)]
    pub evidence: u64,
    /// run the standard mutant of each connection instead
    #[arg(long)]
    pub mutant: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// report format; inferred from the report extension otherwise
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}
