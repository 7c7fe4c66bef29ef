//! Closed-form cycle time, Monte Carlo estimation, and convergence studies.
//!
//! For an infinite-buffer tandem whose rows have finite mean and variance,
//! the cycle time is `gamma = max_i E[tau_i]`: the bottleneck mean, whether
//! the bottleneck is the arrival stream (stable regime) or a server
//! (unstable regime). The two-station blocking variants have their own
//! closed forms (see [`crate::blocking`]). [`estimate_cycle_time`] checks
//! these against simulation with independent replications; [`convergence_study`]
//! tracks the empirical error and the analytic sandwich width over a grid of
//! horizons.

use serde::{Deserialize, Serialize};

use crate::blocking::{blocking_cycle_time, BlockingRule};
use crate::bounds::{cycle_time_sandwich, MomentSummary};
use crate::dist::{
    pairwise_max_moments, validate_stations, ColumnSampler, DependenceMode, DistributionSpec,
};
use crate::error::{Error, Result};
use crate::exec::{map_replications, map_replications_serial};
use crate::realization::Realization;
use crate::rng::derive_seed;

/// Samples and seed for the Monte Carlo moments of `max(tau_1, tau_2)` used
/// by the manufacturing-blocking sandwich width.
const COMPOSITE_MC_SAMPLES: u64 = 1_000_000;
const COMPOSITE_MC_SEED: u64 = 0x51DE_CA57_0000_0001;

/// Buffer discipline of the tandem.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Discipline {
    /// Infinite buffers at every station.
    #[default]
    Infinite,
    /// Two stations, zero-capacity buffer, manufacturing blocking.
    Manufacturing,
    /// Two stations, zero-capacity buffer, communication blocking.
    Communication,
}

impl Discipline {
    pub fn blocking_rule(&self) -> Option<BlockingRule> {
        match self {
            Discipline::Infinite => None,
            Discipline::Manufacturing => Some(BlockingRule::Manufacturing),
            Discipline::Communication => Some(BlockingRule::Communication),
        }
    }
}

/// A fully specified system: station distributions (index 0 = arrivals),
/// per-customer dependence mode, and buffer discipline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemSpec {
    stations: Vec<DistributionSpec>,
    mode: DependenceMode,
    discipline: Discipline,
}

impl SystemSpec {
    pub fn new(
        stations: Vec<DistributionSpec>,
        mode: DependenceMode,
        discipline: Discipline,
    ) -> Result<Self> {
        validate_stations(&stations, mode)?;
        if discipline != Discipline::Infinite && stations.len() - 1 != 2 {
            return Err(Error::OutOfScope(format!(
                "blocking disciplines are modeled only for exactly two stations, got {}",
                stations.len() - 1
            )));
        }
        Ok(SystemSpec {
            stations,
            mode,
            discipline,
        })
    }

    /// All rows, index 0 = arrivals.
    pub fn stations(&self) -> &[DistributionSpec] {
        &self.stations
    }

    /// Number of service stations `M`.
    pub fn station_count(&self) -> usize {
        self.stations.len() - 1
    }

    pub fn mode(&self) -> DependenceMode {
        self.mode
    }

    pub fn discipline(&self) -> Discipline {
        self.discipline
    }

    pub fn sample_realization(&self, n: usize, seed: u64) -> Result<Realization> {
        crate::dist::sample_realization(&self.stations, self.mode, n, seed)
    }

    /// Exact per-row moments, index 0 = arrivals.
    pub fn moments(&self) -> Vec<MomentSummary> {
        self.stations
            .iter()
            .map(|s| MomentSummary {
                mean: s.mean(),
                variance: s.variance(),
            })
            .collect()
    }
}

/// Closed-form cycle time. `emax_std_error` is `Some` only when a Monte
/// Carlo fallback estimated `E[max(tau_1, tau_2)]` (manufacturing blocking
/// with no closed form for the pair).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleTimeFormula {
    pub gamma: f64,
    pub emax_std_error: Option<f64>,
}

/// Closed-form cycle time of the system.
pub fn closed_form_cycle_time(spec: &SystemSpec) -> Result<CycleTimeFormula> {
    match spec.discipline() {
        Discipline::Infinite => {
            let gamma = spec
                .stations()
                .iter()
                .map(DistributionSpec::mean)
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(CycleTimeFormula {
                gamma,
                emax_std_error: None,
            })
        }
        Discipline::Manufacturing | Discipline::Communication => {
            let rule = spec.discipline().blocking_rule().expect("blocking");
            let s = spec.stations();
            let (gamma, se) = blocking_cycle_time(&s[0], &s[1], &s[2], rule)?;
            Ok(CycleTimeFormula {
                gamma,
                emax_std_error: se,
            })
        }
    }
}

/// Throughput `1 / gamma`. Undefined when every mean is zero.
pub fn throughput(spec: &SystemSpec) -> Result<f64> {
    let formula = closed_form_cycle_time(spec)?;
    if formula.gamma <= 0.0 {
        return Err(Error::UndefinedThroughput(
            "every station mean is zero".into(),
        ));
    }
    Ok(1.0 / formula.gamma)
}

/// Replication estimate of the cycle time at horizon `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleTimeEstimate {
    /// Mean of `D_M(n) / n` over the replications.
    pub point: f64,
    /// 95% confidence half width, `1.96 * sd / sqrt(replications)`.
    pub half_width: f64,
    pub n: usize,
    pub replications: u32,
    pub seed: u64,
}

/// Advance the rolling departure vector by one customer.
#[inline]
fn step_departures(d: &mut [f64], tau: &[f64], discipline: Discipline) {
    match discipline {
        Discipline::Infinite => {
            d[0] += tau[0];
            for i in 1..d.len() {
                d[i] = d[i - 1].max(d[i]) + tau[i];
            }
        }
        Discipline::Manufacturing => {
            let prev2 = d[2];
            d[0] += tau[0];
            d[1] = (d[0].max(d[1]) + tau[1]).max(prev2);
            d[2] = d[1].max(prev2) + tau[2];
        }
        Discipline::Communication => {
            let prev2 = d[2];
            d[0] += tau[0];
            d[1] = d[0].max(d[1]).max(prev2) + tau[1];
            d[2] = d[1].max(prev2) + tau[2];
        }
    }
}

/// One trajectory, sampled column by column in `O(M)` memory; returns
/// `D_M(n) / n` at each checkpoint (checkpoints must be sorted ascending).
fn cycle_values_at(spec: &SystemSpec, checkpoints: &[usize], seed: u64) -> Vec<f64> {
    let sampler = ColumnSampler::new(spec.stations(), spec.mode(), seed)
        .expect("system spec was validated on construction");
    let rows = sampler.rows();
    let mut tau = vec![0.0; rows];
    let mut d = vec![0.0; rows];
    let mut out = Vec::with_capacity(checkpoints.len());
    let horizon = *checkpoints.last().expect("nonempty checkpoints");
    let mut next = 0;
    for j in 1..=horizon {
        sampler.column(j, &mut tau);
        step_departures(&mut d, &tau, spec.discipline());
        while next < checkpoints.len() && checkpoints[next] == j {
            out.push(d[rows - 1] / j as f64);
            next += 1;
        }
    }
    out
}

fn mean_and_half_width(values: &[f64]) -> (f64, f64) {
    let reps = values.len() as f64;
    let mean = values.iter().sum::<f64>() / reps;
    let var = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (reps - 1.0);
    (mean, 1.96 * (var / reps).sqrt())
}

fn check_estimate_params(n: usize, replications: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if replications < 2 {
        return Err(Error::InvalidParameter(
            "need at least 2 replications for a confidence interval".into(),
        ));
    }
    Ok(())
}

/// Estimate the cycle time as the mean of `D_M(n) / n` over independent
/// replications; replication `r` runs on the derived seed `(seed, r)`.
///
/// Replications execute in parallel when the `parallel` feature is enabled;
/// the result is identical either way.
pub fn estimate_cycle_time(
    spec: &SystemSpec,
    n: usize,
    replications: u32,
    seed: u64,
) -> Result<CycleTimeEstimate> {
    check_estimate_params(n, replications)?;
    let values = map_replications(replications, |rep| {
        cycle_values_at(spec, &[n], derive_seed(seed, rep as u64))[0]
    });
    let (point, half_width) = mean_and_half_width(&values);
    Ok(CycleTimeEstimate {
        point,
        half_width,
        n,
        replications,
        seed,
    })
}

/// Sequential twin of [`estimate_cycle_time`]; same output, used as the
/// baseline in the bench suite.
pub fn estimate_cycle_time_serial(
    spec: &SystemSpec,
    n: usize,
    replications: u32,
    seed: u64,
) -> Result<CycleTimeEstimate> {
    check_estimate_params(n, replications)?;
    let values = map_replications_serial(replications, |rep| {
        cycle_values_at(spec, &[n], derive_seed(seed, rep as u64))[0]
    });
    let (point, half_width) = mean_and_half_width(&values);
    Ok(CycleTimeEstimate {
        point,
        half_width,
        n,
        replications,
        seed,
    })
}

/// One grid point of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Mean over replications of `|D_M(n)/n - gamma|`.
    pub mean_abs_error: f64,
    /// Width of the analytic sandwich at this `n`.
    pub sandwich_width: f64,
}

/// Moments of the rows of the equivalent infinite-buffer form of the
/// system; blocking disciplines collapse to a single composite station.
fn effective_moments(spec: &SystemSpec) -> Result<Vec<MomentSummary>> {
    let s = spec.stations();
    match spec.discipline() {
        Discipline::Infinite => Ok(spec.moments()),
        // D_2 resolves to a two-row path maximum whose second row is
        // tau_1 + tau_2.
        Discipline::Communication => Ok(vec![
            MomentSummary {
                mean: s[0].mean(),
                variance: s[0].variance(),
            },
            MomentSummary {
                mean: s[1].mean() + s[2].mean(),
                variance: s[1].variance() + s[2].variance(),
            },
        ]),
        // The envelope of D_1 is a two-row path maximum over
        // max(tau_1, tau_2) composites.
        Discipline::Manufacturing => {
            let (mean, variance) =
                pairwise_max_moments(&s[1], &s[2], COMPOSITE_MC_SAMPLES, COMPOSITE_MC_SEED)?;
            Ok(vec![
                MomentSummary {
                    mean: s[0].mean(),
                    variance: s[0].variance(),
                },
                MomentSummary { mean, variance },
            ])
        }
    }
}

/// Analytic sandwich on `E[D_M(n)] / n` at horizon `n`, on the system's
/// equivalent infinite-buffer form.
pub fn sandwich_report(spec: &SystemSpec, n: usize) -> Result<crate::bounds::BoundReport> {
    let moments = effective_moments(spec)?;
    cycle_time_sandwich(n, &moments)
}

/// Width of the analytic sandwich on `E[D_M(n)] / n` at horizon `n`.
pub fn sandwich_width(spec: &SystemSpec, n: usize) -> Result<f64> {
    Ok(sandwich_report(spec, n)?.width())
}

/// Empirical error and analytic sandwich width over a grid of horizons.
///
/// The grid is deduplicated and sorted; each replication walks one
/// trajectory to the largest horizon and reads all grid points on the way.
pub fn convergence_study(
    spec: &SystemSpec,
    grid: &[usize],
    replications: u32,
    seed: u64,
) -> Result<Vec<ConvergenceRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("grid must be nonempty".into()));
    }
    if grid.contains(&0) {
        return Err(Error::InvalidParameter("grid entries must be >= 1".into()));
    }
    if replications < 1 {
        return Err(Error::InvalidParameter(
            "need at least 1 replication".into(),
        ));
    }
    let mut checkpoints = grid.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();

    let gamma = closed_form_cycle_time(spec)?.gamma;
    let per_rep = map_replications(replications, |rep| {
        cycle_values_at(spec, &checkpoints, derive_seed(seed, rep as u64))
    });

    checkpoints
        .iter()
        .enumerate()
        .map(|(gi, &n)| {
            let mean_abs_error = per_rep
                .iter()
                .map(|values| (values[gi] - gamma).abs())
                .sum::<f64>()
                / replications as f64;
            Ok(ConvergenceRow {
                n,
                mean_abs_error,
                sandwich_width: sandwich_width(spec, n)?,
            })
        })
        .collect()
}
