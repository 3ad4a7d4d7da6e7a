use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use ordtutte::gbm::DEFAULT_SEED;
use ordtutte::Backend;

use crate::graph_file::parse_rational;

#[derive(Debug, Parser)]
#[command(name = "ordtutte", version, about = "Ordering-dependent Tutte polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the state sum of a graph file, or evaluate it numerically.
    Compute(ComputeArgs),
    /// Check an identity on a graph file; exits 1 with a counterexample.
    Verify(VerifyArgs),
    /// Compare Monte Carlo moments of the integrated GBM with the chain formula.
    Gbm(GbmArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Recursive,
    Closed,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Recursive => Backend::Recursive,
            BackendArg::Closed => Backend::Closed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Json,
    Pretty,
}

/// `sym` keeps the parameter symbolic; anything else is a number.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsArg {
    Symbolic,
    Value(BigRational),
}

pub fn parse_eps(text: &str) -> Result<EpsArg, String> {
    if text == "sym" {
        Ok(EpsArg::Symbolic)
    } else {
        parse_rational(text).map(EpsArg::Value)
    }
}

/// One side of the weight pair: `fk` is `x` for α and `1 - x` for β, `gbm`
/// is `e^x / x` for α and `-1 / x` for β, `unit` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Fk,
    Gbm,
    Unit,
}

#[derive(Debug, Args)]
pub struct GuardArgs {
    /// Refuse graphs with more edges than this.
    #[arg(long, default_value_t = 20)]
    pub max_edges: usize,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = BackendArg::Recursive)]
    pub backend: BackendArg,
    /// Contraction memory: `sym` or a number.
    #[arg(long, value_parser = parse_eps, default_value = "sym")]
    pub eps: EpsArg,
    /// Deletion memory: `sym` or a number.
    #[arg(long = "eps-prime", value_parser = parse_eps, default_value = "sym")]
    pub eps_prime: EpsArg,
    #[arg(long, value_enum, default_value_t = OutputArg::Json)]
    pub output: OutputArg,
    /// Evaluate numerically with this α; needs `--beta`, `--q` and weights on every edge.
    #[arg(long, value_enum, requires_all = ["beta", "q"])]
    pub alpha: Option<WeightArg>,
    #[arg(long, value_enum, requires_all = ["alpha", "q"])]
    pub beta: Option<WeightArg>,
    #[arg(long, value_parser = parse_rational, requires = "alpha")]
    pub q: Option<BigRational>,
    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Backends,
    Lemma,
    Fk,
    Orderings,
    Factorization,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Backends => "backends",
            Suite::Lemma => "lemma",
            Suite::Fk => "fk",
            Suite::Orderings => "orderings",
            Suite::Factorization => "factorization",
        }
    }
}

/// Counts also accept scientific notation such as `1e5`.
pub fn parse_count(text: &str) -> Result<usize, String> {
    if let Ok(v) = text.parse::<usize>() {
        return Ok(v);
    }
    let v: f64 = text.parse().map_err(|_| format!("invalid count `{text}`"))?;
    if v >= 0.0 && v.fract() == 0.0 && v <= usize::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(format!("invalid count `{text}`"))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Cluster weight for the `fk` suite.
    #[arg(long, value_parser = parse_rational, default_value = "2")]
    pub q: BigRational,
    /// Seed for edge probabilities when the file gives no weights.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Args)]
pub struct GbmArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Moment order.
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    pub paths: usize,
    #[arg(long, value_parser = parse_count, default_value = "2000")]
    pub steps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}
