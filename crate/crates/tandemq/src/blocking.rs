//! Two-station tandem with a zero-capacity buffer at the second station.
//!
//! Station 1 keeps its infinite buffer; station 2 has no waiting room, so
//! the first server can be blocked by the second. Two rules are modeled:
//!
//! - manufacturing blocking: the first server finishes its service but
//!   stays occupied until the second server frees up, so
//!   `D_1(n) = max(max(D_0(n), D_1(n-1)) + tau_1n, D_2(n-1))`;
//! - communication blocking: the first server may not even start while the
//!   second is busy, so `D_1(n) = max(D_0(n), D_1(n-1), D_2(n-1)) + tau_1n`.
//!
//! In both cases `D_2(n) = max(D_1(n), D_2(n-1)) + tau_2n`, which reduces to
//! `D_1(n) + tau_2n` because `D_1(n) >= D_2(n-1)`.
//!
//! Both recursions resolve to single-boundary path maxima
//! ([`manufacturing_explicit_d1`], [`communication_explicit_d2`]), and the
//! manufacturing `D_1(n)` is enveloped per sample by [`d1_sandwich`]. The
//! resulting closed-form cycle times are
//!
//! ```text
//! manufacturing:  gamma = max(E[tau_0], E[max(tau_1, tau_2)])
//! communication:  gamma = max(E[tau_0], E[tau_1] + E[tau_2])
//! ```

use serde::{Deserialize, Serialize};

use crate::dist::{exact_mean_pairwise_max, mean_pairwise_max_monte_carlo, DistributionSpec};
use crate::error::{Error, Result};
use crate::realization::Realization;
use crate::tandem::DepartureSchedule;

/// Samples used by the Monte Carlo fallback for `E[max(tau_1, tau_2)]`.
const EMAX_FALLBACK_SAMPLES: u64 = 1_000_000;
/// Fixed seed for that fallback, so closed-form outputs stay deterministic.
const EMAX_FALLBACK_SEED: u64 = 0x7A9D_E17A_11B0_C5ED;

/// Blocking rule at the zero-capacity buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockingRule {
    Manufacturing,
    Communication,
}

fn require_two_stations(r: &Realization) -> Result<()> {
    if r.station_count() != 2 {
        return Err(Error::OutOfScope(format!(
            "blocking is modeled for exactly two stations with a zero-capacity buffer, got {}",
            r.station_count()
        )));
    }
    Ok(())
}

/// Run the blocking recursion over the whole realization.
pub fn run_blocking_recursion(r: &Realization, rule: BlockingRule) -> Result<DepartureSchedule> {
    require_two_stations(r)?;
    let n = r.customers();
    let mut rows = vec![vec![0.0; n + 1]; 3];
    for j in 1..=n {
        rows[0][j] = rows[0][j - 1] + r.tau(0, j);
        let prev1 = rows[1][j - 1];
        let prev2 = rows[2][j - 1];
        rows[1][j] = match rule {
            BlockingRule::Manufacturing => (rows[0][j].max(prev1) + r.tau(1, j)).max(prev2),
            BlockingRule::Communication => rows[0][j].max(prev1).max(prev2) + r.tau(1, j),
        };
        rows[2][j] = rows[1][j].max(prev2) + r.tau(2, j);
    }
    Ok(DepartureSchedule::from_rows(rows))
}

/// Explicit solution of the manufacturing-blocking `D_1(n)`:
///
/// ```text
/// D_1(n) = max over 1 <= k <= n of
///          sum_{j<=k} tau_0j + tau_1k + sum_{k<=j<=n-1} max(tau_{1,j+1}, tau_2j)
/// ```
#[allow(clippy::needless_range_loop)] // 1-based scans mirror the formula
pub fn manufacturing_explicit_d1(r: &Realization, n: usize) -> Result<f64> {
    require_two_stations(r)?;
    if n == 0 || n > r.customers() {
        return Err(Error::OutOfBounds(format!(
            "customer {n} of {}",
            r.customers()
        )));
    }
    // suffix[k] = sum_{j=k}^{n-1} max(tau_{1,j+1}, tau_2j)
    let mut suffix = vec![0.0; n + 2];
    for k in (1..n).rev() {
        suffix[k] = suffix[k + 1] + r.tau(1, k + 1).max(r.tau(2, k));
    }
    let mut best = f64::NEG_INFINITY;
    let mut head = 0.0;
    for k in 1..=n {
        head += r.tau(0, k);
        let value = head + r.tau(1, k) + suffix[k];
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

/// Explicit solution of the communication-blocking `D_2(n)`:
///
/// ```text
/// D_2(n) = max over 1 <= k <= n of
///          sum_{j<=k} tau_0j + sum_{k<=j<=n} (tau_1j + tau_2j)
/// ```
#[allow(clippy::needless_range_loop)]
pub fn communication_explicit_d2(r: &Realization, n: usize) -> Result<f64> {
    require_two_stations(r)?;
    if n == 0 || n > r.customers() {
        return Err(Error::OutOfBounds(format!(
            "customer {n} of {}",
            r.customers()
        )));
    }
    let mut suffix = vec![0.0; n + 2];
    for k in (1..=n).rev() {
        suffix[k] = suffix[k + 1] + r.tau(1, k) + r.tau(2, k);
    }
    let mut best = f64::NEG_INFINITY;
    let mut head = 0.0;
    for k in 1..=n {
        head += r.tau(0, k);
        let value = head + suffix[k];
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

/// Per-sample envelope on the manufacturing-blocking `D_1(n)`:
///
/// ```text
/// L(n) - max(tau_{1,n+1}, tau_2n)  <=  D_1(n)  <=  U(n)
/// L(n) = max_k { sum_{j<=k} tau_0j + sum_{k<=j<=n} max(tau_{1,j+1}, tau_2j) }
/// U(n) = max_k { sum_{j<=k} tau_0j + sum_{k<=j<=n} max(tau_1j,     tau_{2,j-1}) }
/// ```
///
/// The boundary term `tau_{2,0}` in `U` is taken as 0 (no predecessor
/// service, matching `D_2(0) = 0`). `L` reads `tau_{1,n+1}`, so the
/// realization must hold at least `n + 1` customers.
pub fn d1_sandwich(r: &Realization, n: usize) -> Result<(f64, f64)> {
    require_two_stations(r)?;
    if n == 0 {
        return Err(Error::OutOfBounds("customer 0".into()));
    }
    if n + 1 > r.customers() {
        return Err(Error::InsufficientRealization(format!(
            "the envelope at n={n} reads customer {} but the realization holds {}",
            n + 1,
            r.customers()
        )));
    }

    // lower_suffix[k] = sum_{j=k}^{n} max(tau_{1,j+1}, tau_2j)
    // upper_suffix[k] = sum_{j=k}^{n} max(tau_1j, tau_{2,j-1}), tau_{2,0} = 0
    let mut lower_suffix = vec![0.0; n + 2];
    let mut upper_suffix = vec![0.0; n + 2];
    for k in (1..=n).rev() {
        lower_suffix[k] = lower_suffix[k + 1] + r.tau(1, k + 1).max(r.tau(2, k));
        let prev2 = if k >= 2 { r.tau(2, k - 1) } else { 0.0 };
        upper_suffix[k] = upper_suffix[k + 1] + r.tau(1, k).max(prev2);
    }
    let mut l = f64::NEG_INFINITY;
    let mut u = f64::NEG_INFINITY;
    let mut head = 0.0;
    for k in 1..=n {
        head += r.tau(0, k);
        l = l.max(head + lower_suffix[k]);
        u = u.max(head + upper_suffix[k]);
    }
    Ok((l - r.tau(1, n + 1).max(r.tau(2, n)), u))
}

/// Closed-form cycle time of the two-station blocking tandem.
///
/// Returns `(gamma, emax_std_error)`; the standard error is `Some` only when
/// the manufacturing rule had to estimate `E[max(tau_1, tau_2)]` by Monte
/// Carlo because no closed form exists for the family pair.
pub fn blocking_cycle_time(
    arrival: &DistributionSpec,
    first: &DistributionSpec,
    second: &DistributionSpec,
    rule: BlockingRule,
) -> Result<(f64, Option<f64>)> {
    for spec in [arrival, first, second] {
        spec.validate()?;
    }
    match rule {
        BlockingRule::Communication => Ok((arrival.mean().max(first.mean() + second.mean()), None)),
        BlockingRule::Manufacturing => match exact_mean_pairwise_max(first, second) {
            Some(emax) => Ok((arrival.mean().max(emax), None)),
            None => {
                let (emax, se) = mean_pairwise_max_monte_carlo(
                    first,
                    second,
                    EMAX_FALLBACK_SAMPLES,
                    EMAX_FALLBACK_SEED,
                )?;
                Ok((arrival.mean().max(emax), Some(se)))
            }
        },
    }
}
