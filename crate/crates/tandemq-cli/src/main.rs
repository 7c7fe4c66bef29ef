//! `tandemq` - tandem queueing simulation and cycle-time analysis.
//!
//! Subcommands: `simulate`, `verify`, `bounds`, `converge`, `formula`.
//! Every run is driven by a TOML configuration (see [`config`]) plus flag
//! overrides, and emits a single JSON object or a CSV table. Identical
//! configurations and seeds produce byte-identical output.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use config::Overrides;

#[derive(Debug)]
pub enum CliError {
    Core(tandemq::Error),
    ConfigParse(String),
    Io(String),
    VerificationFailed(String),
}

impl CliError {
    /// Stable machine-readable code, one per failure class.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                tandemq::Error::InvalidParameter(_) => "invalid-parameter",
                tandemq::Error::OutOfScope(_) => "out-of-scope",
                tandemq::Error::OutOfBounds(_) => "out-of-bounds",
                tandemq::Error::BudgetExceeded(_) => "budget-exceeded",
                tandemq::Error::InsufficientRealization(_) => "insufficient-realization",
                tandemq::Error::UndefinedThroughput(_) => "undefined-throughput",
            },
            CliError::ConfigParse(_) => "config-parse",
            CliError::Io(_) => "io",
            CliError::VerificationFailed(_) => "verification-failed",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::ConfigParse(msg) => write!(f, "configuration parse error: {msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::VerificationFailed(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML experiment configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Customers per trajectory (overrides the config).
    #[arg(long)]
    n: Option<usize>,
    /// Independent replications (overrides the config).
    #[arg(long)]
    replications: Option<u32>,
    /// Base seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Horizon grid, comma separated (overrides the config).
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<usize>>,
    /// Write the output to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            replications: self.replications,
            seed: self.seed,
            grid: self.grid.clone(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tandemq",
    version,
    about = "Tandem queueing simulation and cycle-time analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the cycle time by replicated simulation.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the cycle-time trace of replication 0 as CSV.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Check the recursions against their explicit solutions.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the finite-n sandwich on the expected cycle time over the grid.
    Bounds {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Empirical error and sandwich width over the horizon grid.
    Converge {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Closed-form cycle time and throughput.
    Formula {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, trace) = match &cli.command {
        Command::Simulate { common, trace } => (common, trace.clone()),
        Command::Verify { common }
        | Command::Bounds { common }
        | Command::Converge { common }
        | Command::Formula { common } => (common, None),
    };
    let (spec, resolved) = config::load(&common.config, &common.overrides())?;
    let out = common.out.as_ref();
    match &cli.command {
        Command::Simulate { .. } => {
            commands::simulate(&spec, &resolved, out, common.format, trace.as_ref())
        }
        Command::Verify { .. } => {
            commands::verify(&spec, &resolved, common.n, out, common.format)
        }
        Command::Bounds { .. } => commands::bounds(&spec, &resolved, out, common.format),
        Command::Converge { .. } => commands::converge(&spec, &resolved, out, common.format),
        Command::Formula { .. } => commands::formula(&spec, &resolved, out, common.format),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("{}", output::error_json(&err));
        std::process::exit(1);
    }
}
