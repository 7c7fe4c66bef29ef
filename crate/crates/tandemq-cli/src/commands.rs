//! Subcommand implementations.

use serde::Serialize;
use std::path::PathBuf;

use tandemq::analysis::{
    closed_form_cycle_time, convergence_study, estimate_cycle_time, sandwich_report, throughput,
    ConvergenceRow, CycleTimeEstimate, Discipline, SystemSpec,
};
use tandemq::blocking::{
    communication_explicit_d2, manufacturing_explicit_d1, run_blocking_recursion, BlockingRule,
};
use tandemq::bounds::BoundReport;
use tandemq::rng::derive_seed;
use tandemq::tandem::{cycle_time_trace, explicit_solution, run_recursion, DEFAULT_TUPLE_BUDGET};

use crate::config::ResolvedConfig;
use crate::output::{csv_table, emit, json_envelope, write_file};
use crate::{CliError, Format};

/// Deviation above which `verify` reports failure.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

fn fmt(v: f64) -> String {
    format!("{v}")
}

// ---------------------------------------------------------------------------
// formula
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct FormulaPayload {
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    emax_std_error: Option<f64>,
    throughput: f64,
}

pub fn formula(
    spec: &SystemSpec,
    config: &ResolvedConfig,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    let f = closed_form_cycle_time(spec).map_err(CliError::Core)?;
    let pi = throughput(spec).map_err(CliError::Core)?;
    let text = match format {
        Format::Json => json_envelope(
            "formula",
            config,
            FormulaPayload {
                gamma: f.gamma,
                emax_std_error: f.emax_std_error,
                throughput: pi,
            },
        )?,
        Format::Csv => csv_table(
            &["gamma", "throughput"],
            &[vec![fmt(f.gamma), fmt(pi)]],
        ),
    };
    emit(&text, out)
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SimulatePayload {
    estimate: CycleTimeEstimate,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    emax_std_error: Option<f64>,
}

pub fn simulate(
    spec: &SystemSpec,
    config: &ResolvedConfig,
    out: Option<&PathBuf>,
    format: Format,
    trace: Option<&PathBuf>,
) -> Result<(), CliError> {
    let estimate = estimate_cycle_time(spec, config.n, config.replications, config.seed)
        .map_err(CliError::Core)?;
    let f = closed_form_cycle_time(spec).map_err(CliError::Core)?;

    if let Some(path) = trace {
        write_file(path, &trace_csv(spec, config)?)?;
    }

    let text = match format {
        Format::Json => json_envelope(
            "simulate",
            config,
            SimulatePayload {
                estimate,
                gamma: f.gamma,
                emax_std_error: f.emax_std_error,
            },
        )?,
        Format::Csv => csv_table(
            &["point", "half_width", "n", "replications", "seed", "gamma"],
            &[vec![
                fmt(estimate.point),
                fmt(estimate.half_width),
                estimate.n.to_string(),
                estimate.replications.to_string(),
                estimate.seed.to_string(),
                fmt(f.gamma),
            ]],
        ),
    };
    emit(&text, out)
}

/// Cycle-time trace of replication 0, as `n,gamma_hat` rows (plus a `rule`
/// column for blocking disciplines).
fn trace_csv(spec: &SystemSpec, config: &ResolvedConfig) -> Result<String, CliError> {
    let r = spec
        .sample_realization(config.n, derive_seed(config.seed, 0))
        .map_err(CliError::Core)?;
    let trace: Vec<(usize, f64)> = match spec.discipline().blocking_rule() {
        None => cycle_time_trace(&r),
        Some(rule) => {
            let s = run_blocking_recursion(&r, rule).map_err(CliError::Core)?;
            s.last_station()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, d)| (n, d / n as f64))
                .collect()
        }
    };
    let rule_name = match spec.discipline() {
        Discipline::Infinite => None,
        Discipline::Manufacturing => Some("manufacturing"),
        Discipline::Communication => Some("communication"),
    };
    Ok(match rule_name {
        None => csv_table(
            &["n", "gamma_hat"],
            &trace
                .iter()
                .map(|(n, g)| vec![n.to_string(), fmt(*g)])
                .collect::<Vec<_>>(),
        ),
        Some(rule) => csv_table(
            &["n", "gamma_hat", "rule"],
            &trace
                .iter()
                .map(|(n, g)| vec![n.to_string(), fmt(*g), rule.to_string()])
                .collect::<Vec<_>>(),
        ),
    })
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BoundsPayload {
    bounds: Vec<BoundReport>,
}

pub fn bounds(
    spec: &SystemSpec,
    config: &ResolvedConfig,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    let mut grid = config.grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let reports: Vec<BoundReport> = grid
        .iter()
        .map(|&n| sandwich_report(spec, n).map_err(CliError::Core))
        .collect::<Result<_, _>>()?;
    let text = match format {
        Format::Json => json_envelope("bounds", config, BoundsPayload { bounds: reports })?,
        Format::Csv => csv_table(
            &[
                "n",
                "lower",
                "upper",
                "bottleneck",
                "other_means_sum",
                "window_term",
                "bottleneck_term",
            ],
            &reports
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        fmt(r.lower),
                        fmt(r.upper),
                        r.bottleneck.to_string(),
                        fmt(r.components.other_means_sum),
                        fmt(r.components.window_term),
                        fmt(r.components.bottleneck_term),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(&text, out)
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ConvergePayload {
    gamma: f64,
    table: Vec<ConvergenceRow>,
}

pub fn converge(
    spec: &SystemSpec,
    config: &ResolvedConfig,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    let gamma = closed_form_cycle_time(spec).map_err(CliError::Core)?.gamma;
    let table = convergence_study(spec, &config.grid, config.replications, config.seed)
        .map_err(CliError::Core)?;
    let text = match format {
        Format::Json => json_envelope("converge", config, ConvergePayload { gamma, table })?,
        Format::Csv => csv_table(
            &["n", "mean_abs_error", "sandwich_width"],
            &table
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        fmt(r.mean_abs_error),
                        fmt(r.sandwich_width),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(&text, out)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyCheck {
    name: &'static str,
    realizations: u32,
    horizon: usize,
    max_abs_deviation: f64,
}

#[derive(Serialize)]
struct VerifyPayload {
    tolerance: f64,
    max_abs_deviation: f64,
    status: &'static str,
    checks: Vec<VerifyCheck>,
}

/// Default verification horizons: the exhaustive path-maximum oracle is
/// combinatorial, the blocking forms are linear.
fn default_verify_horizon(discipline: Discipline) -> usize {
    match discipline {
        Discipline::Infinite => 6,
        _ => 50,
    }
}

pub fn verify(
    spec: &SystemSpec,
    config: &ResolvedConfig,
    horizon_override: Option<usize>,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    let horizon = horizon_override.unwrap_or_else(|| default_verify_horizon(spec.discipline()));
    let realizations = config.replications;
    let mut checks = Vec::new();

    match spec.discipline().blocking_rule() {
        None => {
            let mut dev: f64 = 0.0;
            for rep in 0..realizations {
                let r = spec
                    .sample_realization(horizon, derive_seed(config.seed, rep as u64))
                    .map_err(CliError::Core)?;
                let schedule = run_recursion(&r);
                for m in 1..=spec.station_count() {
                    for j in 1..=horizon {
                        let oracle = explicit_solution(&r, m, j, DEFAULT_TUPLE_BUDGET)
                            .map_err(CliError::Core)?;
                        dev = dev.max((oracle - schedule.epoch(m, j)).abs());
                    }
                }
            }
            checks.push(VerifyCheck {
                name: "recursion-vs-path-maximum",
                realizations,
                horizon,
                max_abs_deviation: dev,
            });
        }
        Some(rule) => {
            let mut explicit_dev: f64 = 0.0;
            let mut reduction_dev: f64 = 0.0;
            for rep in 0..realizations {
                let r = spec
                    .sample_realization(horizon, derive_seed(config.seed, rep as u64))
                    .map_err(CliError::Core)?;
                let schedule = run_blocking_recursion(&r, rule).map_err(CliError::Core)?;
                for j in 1..=horizon {
                    let d = match rule {
                        BlockingRule::Manufacturing => {
                            let explicit =
                                manufacturing_explicit_d1(&r, j).map_err(CliError::Core)?;
                            reduction_dev = reduction_dev.max(
                                (schedule.epoch(2, j) - schedule.epoch(1, j) - r.tau(2, j)).abs(),
                            );
                            (explicit - schedule.epoch(1, j)).abs()
                        }
                        BlockingRule::Communication => {
                            let explicit =
                                communication_explicit_d2(&r, j).map_err(CliError::Core)?;
                            (explicit - schedule.epoch(2, j)).abs()
                        }
                    };
                    explicit_dev = explicit_dev.max(d);
                }
            }
            checks.push(VerifyCheck {
                name: match rule {
                    BlockingRule::Manufacturing => "manufacturing-explicit-d1",
                    BlockingRule::Communication => "communication-explicit-d2",
                },
                realizations,
                horizon,
                max_abs_deviation: explicit_dev,
            });
            if rule == BlockingRule::Manufacturing {
                checks.push(VerifyCheck {
                    name: "manufacturing-reduction",
                    realizations,
                    horizon,
                    max_abs_deviation: reduction_dev,
                });
            }
        }
    }

    let max_abs_deviation = checks
        .iter()
        .map(|c| c.max_abs_deviation)
        .fold(0.0f64, f64::max);
    let pass = max_abs_deviation <= VERIFY_TOLERANCE;
    let payload = VerifyPayload {
        tolerance: VERIFY_TOLERANCE,
        max_abs_deviation,
        status: if pass { "pass" } else { "fail" },
        checks,
    };
    let text = match format {
        Format::Json => json_envelope("verify", config, payload)?,
        Format::Csv => csv_table(
            &["check", "realizations", "horizon", "max_abs_deviation"],
            &payload
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.to_string(),
                        c.realizations.to_string(),
                        c.horizon.to_string(),
                        fmt(c.max_abs_deviation),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(&text, out)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "max |deviation| {max_abs_deviation:e} exceeds {VERIFY_TOLERANCE:e}"
        )))
    }
}
