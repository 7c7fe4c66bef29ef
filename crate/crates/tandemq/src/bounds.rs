//! Bounds on expected maxima and the finite-n cycle-time sandwich.
//!
//! Three classical inequalities for independent random variables are
//! provided, and combined into a constructive sandwich on `E[D_M(n)] / n`:
//!
//! - [`partial_sum_max_bound`]: for zero-mean `xi_k`,
//!   `E[max_k (xi_1 + ... + xi_k)] <= 2 sqrt(2(2n-1)/n) (sum_k E[xi_k^2])^{1/2}`.
//! - [`iid_max_bound`] (Gumbel / Hartley-David): for i.i.d. `xi_k`,
//!   `E[max_k xi_k] <= E[xi_1] + (n-1)/sqrt(2n-1) * sqrt(D[xi_1])`.
//! - [`window_sum_max_bound`]: for i.i.d. `xi_k` with `E[xi_1] <= 0`,
//!   `E[max_{l<=k} (xi_l + ... + xi_k)] <= E[xi_1]
//!    + (4 sqrt(2(2n-1)) + (n-1)/sqrt(2n-1)) * sqrt(D[xi_1])`.
//!
//! [`cycle_time_sandwich`] applies them to the per-station differences
//! `tau_i - tau_m` around the bottleneck station `m` and yields
//!
//! ```text
//! max_i E[tau_i]  <=  E[D_M(n)] / n  <=  max_i E[tau_i] + B(n) / n
//! ```
//!
//! with an explicit `B(n) = O(sqrt(n))`, so the width shrinks like
//! `n^{-1/2}`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Exact mean and variance of one station's time distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
}

impl MomentSummary {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() || !variance.is_finite() || variance < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "moments must be finite with variance >= 0, got mean={mean}, variance={variance}"
            )));
        }
        Ok(MomentSummary { mean, variance })
    }
}

/// Per-term breakdown of the correction bound `B(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundComponents {
    /// Sum of the non-bottleneck means.
    pub other_means_sum: f64,
    /// Window-maximum term over the centered differences `tau_i - tau_m`.
    pub window_term: f64,
    /// Extreme-value term for the bottleneck's own services.
    pub bottleneck_term: f64,
    /// Total `B(n)`; the sandwich width is `B(n) / n`.
    pub total: f64,
}

/// Finite-n sandwich on `E[D_M(n)] / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    /// Index of the bottleneck station (0 = arrivals); ties break toward the
    /// smallest index.
    pub bottleneck: usize,
    pub components: BoundComponents,
}

impl BoundReport {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn check_n(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(n as f64)
}

/// Coefficient of the i.i.d. extreme-value bound: `(n-1)/sqrt(2n-1)`.
fn extreme_coef(n: f64) -> f64 {
    (n - 1.0) / (2.0 * n - 1.0).sqrt()
}

/// Coefficient of the window-maximum bound:
/// `4 sqrt(2(2n-1)) + (n-1)/sqrt(2n-1)`.
fn window_coef(n: f64) -> f64 {
    4.0 * (2.0 * (2.0 * n - 1.0)).sqrt() + extreme_coef(n)
}

/// Bound on `E[max_{1<=k<=n} (xi_1 + ... + xi_k)]` for independent zero-mean
/// `xi_k` with the given second moments (`n` = slice length).
pub fn partial_sum_max_bound(second_moments: &[f64]) -> Result<f64> {
    let n = check_n(second_moments.len())?;
    if let Some(bad) = second_moments.iter().find(|m| !m.is_finite() || **m < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "second moments must be finite and nonnegative, got {bad}"
        )));
    }
    let sum: f64 = second_moments.iter().sum();
    Ok(2.0 * (2.0 * (2.0 * n - 1.0) / n).sqrt() * sum.sqrt())
}

/// The i.i.d. specialization of [`partial_sum_max_bound`]:
/// `2 sqrt(2(2n-1) E[xi_1^2])`.
pub fn partial_sum_max_bound_iid(n: usize, second_moment: f64) -> Result<f64> {
    partial_sum_max_bound(&vec![second_moment; n])
}

/// Bound on `E[max_{1<=k<=n} xi_k]` for i.i.d. `xi_k`.
pub fn iid_max_bound(n: usize, mean: f64, variance: f64) -> Result<f64> {
    let n = check_n(n)?;
    let m = MomentSummary::new(mean, variance)?;
    Ok(m.mean + extreme_coef(n) * m.variance.sqrt())
}

/// Bound on `E[max over nonempty windows l..=k of the window sum]` for
/// i.i.d. `xi_k` with nonpositive mean.
pub fn window_sum_max_bound(n: usize, mean: f64, variance: f64) -> Result<f64> {
    let n = check_n(n)?;
    let m = MomentSummary::new(mean, variance)?;
    if m.mean > 0.0 {
        return Err(Error::InvalidParameter(format!(
            "window-maximum bound requires a nonpositive mean, got {}",
            m.mean
        )));
    }
    Ok(m.mean + window_coef(n) * m.variance.sqrt())
}

/// Finite-n sandwich on `E[D_M(n)] / n` for an infinite-buffer tandem whose
/// station times have the given moments (index 0 = arrivals).
///
/// The lower bound is the bottleneck mean `max_i E[tau_i]`. The upper bound
/// adds `B(n) / n` with
///
/// ```text
/// B(n) = sum_{i != m} E[tau_i]
///      + (4 sqrt(2(2n-1)) + (n-1)/sqrt(2n-1)) * sum_{i != m} sqrt(var_i + var_m)
///      + M * (n-1)/sqrt(2n-1) * sqrt(var_m)
/// ```
///
/// where `var_i + var_m` is the variance of `tau_i - tau_m` (rows are
/// independent).
pub fn cycle_time_sandwich(n: usize, stations: &[MomentSummary]) -> Result<BoundReport> {
    check_n(n)?;
    if stations.len() < 2 {
        return Err(Error::InvalidParameter(
            "need an arrival entry and at least one station".into(),
        ));
    }
    for s in stations {
        MomentSummary::new(s.mean, s.variance)?;
        if s.mean < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "station means must be nonnegative, got {}",
                s.mean
            )));
        }
    }

    let bottleneck = stations
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.mean
                .partial_cmp(&b.mean)
                .unwrap()
                // First maximizer wins: prefer the smaller index on ties.
                .then(ib.cmp(ia))
        })
        .map(|(i, _)| i)
        .expect("nonempty");
    let bm = stations[bottleneck];
    let service_count = (stations.len() - 1) as f64;
    let nf = n as f64;

    let mut other_means_sum = 0.0;
    let mut deviation_sum = 0.0;
    for (i, s) in stations.iter().enumerate() {
        if i != bottleneck {
            other_means_sum += s.mean;
            deviation_sum += (s.variance + bm.variance).sqrt();
        }
    }
    let window_term = window_coef(nf) * deviation_sum;
    let bottleneck_term = service_count * extreme_coef(nf) * bm.variance.sqrt();
    let total = other_means_sum + window_term + bottleneck_term;

    Ok(BoundReport {
        n,
        lower: bm.mean,
        upper: bm.mean + total / nf,
        bottleneck,
        components: BoundComponents {
            other_means_sum,
            window_term,
            bottleneck_term,
            total,
        },
    })
}
