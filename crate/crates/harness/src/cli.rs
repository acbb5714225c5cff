//! Command-line surface of the `lol` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{AdversaryKind, ExperimentConfig, Rational, Scenario, StreamKind};
use crate::error::Result;
use crate::report::emit;

#[derive(Parser, Debug)]
#[command(name = "lol", version, about = "List online learning experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List Littlestone dimension, minimax value and witness tree.
    Dim(Common),
    /// List SOA on realizable streams.
    Soa(Common),
    /// List Perceptron on generated separable data.
    Perceptron(Common),
    /// Multiplicative weights over random list experts.
    Mw(Common),
    /// Agnostic learner over the SOA cover family.
    Agnostic(Common),
    /// Negative-regret hybrid over the anytime agnostic learner.
    Hybrid(Common),
    /// Lower-bound adversaries.
    Adversary {
        #[arg(value_enum)]
        kind: AdversaryArg,
        #[command(flatten)]
        common: Common,
    },
    /// Cover family size and exhaustive coverage.
    Cover(Common),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AdversaryArg {
    Tree,
    RandomBranch,
    CorruptedBranch,
    Symdiff,
    P1,
    P2,
    Monotone,
}

impl From<AdversaryArg> for AdversaryKind {
    fn from(a: AdversaryArg) -> Self {
        match a {
            AdversaryArg::Tree => AdversaryKind::Tree,
            AdversaryArg::RandomBranch => AdversaryKind::RandomBranch,
            AdversaryArg::CorruptedBranch => AdversaryKind::CorruptedBranch,
            AdversaryArg::Symdiff => AdversaryKind::Symdiff,
            AdversaryArg::P1 => AdversaryKind::P1,
            AdversaryArg::P2 => AdversaryKind::P2,
            AdversaryArg::Monotone => AdversaryKind::Monotone,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StreamArg {
    Random,
    Adversarial,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Class file, inline JSON, or a name: p1:d:k, p2:d:k[:n], cube:n, all:n:L, symdiff.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Horizon.
    #[arg(long = "T", default_value_t = 100)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Corruption rate as `a/b` or a decimal.
    #[arg(long)]
    pub p: Option<Rational>,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Target margin for generated data.
    #[arg(long, default_value_t = 0.05)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Horizon cap for the minimax stabilization check.
    #[arg(long)]
    pub dim_cap: Option<usize>,
    /// CSV destination; the summary then goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 2 when a bound check fails.
    #[arg(long)]
    pub strict: bool,
    /// Feature dimension for the perceptron.
    #[arg(long, default_value_t = 2)]
    pub features: usize,
    /// Label count for scenarios without a class.
    #[arg(long, default_value_t = 3)]
    pub labels: usize,
    #[arg(long, default_value_t = 8)]
    pub experts: usize,
    /// Label noise rate of agnostic and hybrid streams.
    #[arg(long, default_value_t = 0.2)]
    pub noise: f64,
    /// Use the doubling learner instead of the fixed-horizon one.
    #[arg(long)]
    pub anytime: bool,
    /// Opponent learner for adversary scenarios.
    #[arg(long)]
    pub learner: Option<String>,
    #[arg(long, value_enum, default_value_t = StreamArg::Random)]
    pub stream: StreamArg,
    /// Limit on enumerated experts and search nodes.
    #[arg(long, default_value_t = lol_core::learners::agnostic::DEFAULT_EXPERT_BUDGET)]
    pub budget: u128,
}

impl std::str::FromStr for Rational {
    type Err = crate::error::HarnessError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::config::parse_rational(s)
    }
}

impl Cli {
    pub fn into_config(self) -> (ExperimentConfig, Option<PathBuf>, bool) {
        let (scenario, c) = match self.command {
            Command::Dim(c) => (Scenario::Dim, c),
            Command::Soa(c) => (Scenario::Soa, c),
            Command::Perceptron(c) => (Scenario::Perceptron, c),
            Command::Mw(c) => (Scenario::Mw, c),
            Command::Agnostic(c) => (Scenario::Agnostic, c),
            Command::Hybrid(c) => (Scenario::Hybrid, c),
            Command::Adversary { kind, common } => (Scenario::Adversary(kind.into()), common),
            Command::Cover(c) => (Scenario::Cover, c),
        };
        let config = ExperimentConfig {
            scenario,
            class: c.class,
            k: c.k,
            horizon: c.horizon,
            trials: c.trials,
            seed: c.seed,
            p: c.p,
            epsilon: c.epsilon,
            gamma: c.gamma,
            radius: c.radius,
            dim_cap: c.dim_cap,
            features: c.features,
            labels: c.labels,
            experts: c.experts,
            noise: c.noise,
            anytime: c.anytime,
            learner: c.learner,
            stream: match c.stream {
                StreamArg::Random => StreamKind::Random,
                StreamArg::Adversarial => StreamKind::Adversarial,
            },
            budget: c.budget,
        };
        (config, c.out, c.strict)
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn main_with<O: Write, E: Write>(args: impl IntoIterator<Item = String>, stdout: &mut O, stderr: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (config, out, strict) = cli.into_config();
    match execute(&config, out.as_deref(), stdout, stderr) {
        Ok(pass) if strict && !pass => 2,
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "lol: {e}");
            e.exit_code()
        }
    }
}

fn execute<O: Write, E: Write>(
    config: &ExperimentConfig,
    out: Option<&std::path::Path>,
    stdout: &mut O,
    stderr: &mut E,
) -> Result<bool> {
    let outcome = crate::run(config)?;
    emit(&outcome, out, stdout, stderr)?;
    Ok(outcome.pass)
}
