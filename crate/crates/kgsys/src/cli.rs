use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kgsys", version, about = "Exact Krawtchouk-Griffiths systems over Q(i)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the symmetric power of a matrix.
    Sympow(MatrixArgs),
    /// Print the induced Lie-algebra action Γ(X) of a matrix.
    Gamma(MatrixArgs),
    /// Check the identities of a system, bundle or generated system.
    Verify(VerifyArgs),
    /// Emit a bundle with Φ, B, p̄, D̄ and the recurrence/spectrum pairs.
    Build(BuildArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    #[default]
    Main,
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum CheckKind {
    Kcondition,
    Orthogonality,
    Dual,
    Recurrence,
    Reflection,
    Classical,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,

    /// Largest induced dimension ν allowed.
    #[arg(long, default_value_t = kgsys_core::DEFAULT_GUARD as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub guard: u64,

    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Matrix JSON file.
    #[arg(long)]
    pub matrix: PathBuf,

    #[arg(long)]
    pub degree: u32,

    #[arg(long, value_enum, default_value_t)]
    pub engine: Engine,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["system", "reflect", "classical"])))]
pub struct Source {
    /// System JSON, or a bundle written by `build`.
    #[arg(long)]
    pub system: Option<PathBuf>,

    /// Reflection vector, e.g. "1,2i".
    #[arg(long, allow_hyphen_values = true)]
    pub reflect: Option<String>,

    /// Square roots of the norms, e.g. "1,6". Defaults to all ones.
    #[arg(long, requires = "reflect")]
    pub scale: Option<String>,

    /// The symmetric binomial system at this degree.
    #[arg(long, conflicts_with = "degree")]
    pub classical: Option<u32>,

    #[arg(long)]
    pub degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,

    /// Checks to run; defaults to every check that applies.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<CheckKind>,

    /// Engine used to recompute Φ independently.
    #[arg(long, value_enum, default_value_t)]
    pub engine: Engine,

    /// Add 1 to Φ at ROW,COL before checking.
    #[arg(long, hide = true, value_name = "ROW,COL")]
    pub inject_fault: Option<String>,

    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: Source,

    #[command(flatten)]
    pub output: Output,
}
