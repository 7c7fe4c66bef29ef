//! TOML experiment configuration and its resolution against flag overrides.
//!
//! ```toml
//! discipline = "infinite"        # infinite | manufacturing | communication
//! mode = "independent"           # independent | shared-draw | identical-service
//!
//! [[stations]]                   # index 0 = arrivals, then one per server
//! family = "exponential"
//! params = { rate = 1.0 }
//!
//! [[stations]]
//! family = "uniform"
//! params = { low = 0.0, high = 1.0 }
//!
//! [run]                          # all optional
//! n = 100000
//! replications = 20
//! seed = 1
//! grid = [100, 1000, 10000, 100000]
//! ```
//!
//! Unknown keys are rejected. Flags win over file values; defaults fill the
//! rest, and every output embeds the fully resolved configuration.

use serde::{Deserialize, Serialize};
use std::path::Path;

use tandemq::analysis::{Discipline, SystemSpec};
use tandemq::dist::{DependenceMode, DistributionSpec};

use crate::CliError;

pub const DEFAULT_N: usize = 100_000;
pub const DEFAULT_REPLICATIONS: u32 = 20;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_GRID: [usize; 4] = [100, 1_000, 10_000, 100_000];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    discipline: Discipline,
    #[serde(default)]
    mode: DependenceMode,
    stations: Vec<DistributionSpec>,
    #[serde(default)]
    run: RunSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    n: Option<usize>,
    replications: Option<u32>,
    seed: Option<u64>,
    grid: Option<Vec<usize>>,
}

/// Flag overrides collected from the command line.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub n: Option<usize>,
    pub replications: Option<u32>,
    pub seed: Option<u64>,
    pub grid: Option<Vec<usize>>,
}

/// Fully resolved configuration, echoed verbatim into every output.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub discipline: Discipline,
    pub mode: DependenceMode,
    pub stations: Vec<DistributionSpec>,
    pub n: usize,
    pub replications: u32,
    pub seed: u64,
    pub grid: Vec<usize>,
}

/// Parse, validate, and resolve a configuration file.
pub fn load(path: &Path, overrides: &Overrides) -> Result<(SystemSpec, ResolvedConfig), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile =
        toml::from_str(&text).map_err(|e| CliError::ConfigParse(e.to_string()))?;

    let spec = SystemSpec::new(file.stations.clone(), file.mode, file.discipline)
        .map_err(CliError::Core)?;

    let resolved = ResolvedConfig {
        discipline: file.discipline,
        mode: file.mode,
        stations: file.stations,
        n: overrides.n.or(file.run.n).unwrap_or(DEFAULT_N),
        replications: overrides
            .replications
            .or(file.run.replications)
            .unwrap_or(DEFAULT_REPLICATIONS),
        seed: overrides.seed.or(file.run.seed).unwrap_or(DEFAULT_SEED),
        grid: overrides
            .grid
            .clone()
            .or(file.run.grid)
            .unwrap_or_else(|| DEFAULT_GRID.to_vec()),
    };
    Ok((spec, resolved))
}
