use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "ks", version, about = "Invariants, representations and random walks for the algebras U_a")]
pub struct Cli {
    /// Output format for stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker thread cap for the parallel sections.
    #[arg(long, env = "KS_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Also write the plot-ready table of the report to this CSV file.
    #[arg(long, global = true, value_name = "PATH")]
    pub plot: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Everything that determines a report. Echoed into the output and accepted
/// back by `ks replay`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub format: Format,
    pub command: Task,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(flatten)]
    Task(Task),
    /// Re-run the config echoed in a previous JSON report (or a bare config).
    Replay {
        path: PathBuf,
    },
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Task {
    /// Periodic-point counts and entropy of one parameter.
    Invariants(InvariantsArgs),
    /// Compare the isomorphism invariants of two parameters.
    Classify(ClassifyArgs),
    /// Build and check covariant finite-dimensional blocks.
    Rep(RepArgs),
    /// Block-diagonal Dirac operator: summability and commutator norms.
    Dirac(DiracArgs),
    /// Return probabilities and ball growth of the simple random walk.
    Walk(WalkArgs),
    /// K-theory of U_{m/l}.
    Kgroups(KgroupsArgs),
    /// Quick internal consistency checks.
    Selftest,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsArgs {
    /// Minimal polynomial of a, e.g. "x^2-x-1", "[-2, 1]" or "transcendental".
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 12)]
    pub qmax: usize,
    /// Root-isolation tolerance for the entropy.
    #[arg(long, default_value_t = ks_core::dynamics::DEFAULT_ROOT_TOL)]
    pub tol: f64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[arg(long, default_value_t = 12)]
    pub qmax: usize,
    #[arg(long, default_value_t = ks_core::dynamics::DEFAULT_ROOT_TOL)]
    pub tol: f64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 4)]
    pub qmax: usize,
    /// Corner phases as fractions of a turn, e.g. "0,1/4,0.618".
    #[arg(long, value_delimiter = ',', default_values_t = vec!["0".to_string(), "1/4".to_string()])]
    pub x: Vec<String>,
    /// Pass threshold for covariance and unitarity deviations.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Commuting,
    Mixed,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracArgs {
    #[arg(long)]
    pub poly: String,
    /// Design summability exponent.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 10)]
    pub qmax: usize,
    #[arg(long, value_enum, default_value_t = Mode::Mixed)]
    pub mode: Mode,
    /// Exponent at which to test summability (defaults to p).
    #[arg(long)]
    pub exponent: Option<f64>,
    /// Largest block size used for the commutator norms.
    #[arg(long, default_value_t = 6)]
    pub family_qmax: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkArgs {
    /// Minimal polynomial of a; omit with --control.
    #[arg(long, required_unless_present = "control")]
    pub poly: Option<String>,
    /// Use the abelian group Z^2 as a polynomial-growth baseline.
    #[arg(long, conflicts_with = "poly")]
    pub control: bool,
    /// Largest walk length computed exactly.
    #[arg(long, default_value_t = 8)]
    pub tmax: usize,
    /// Monte Carlo samples per length (0 disables sampling).
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Stay put with probability 1/2 at each step.
    #[arg(long)]
    pub lazy: bool,
    /// Largest ball radius.
    #[arg(long, default_value_t = 8)]
    pub radius: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KgroupsArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub l: u64,
}
