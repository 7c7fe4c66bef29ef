//! Random-variate families with exact analytic moments.
//!
//! Five families are supported, all nonnegative with finite mean and
//! variance:
//!
//! | Family            | Parameters      | Mean        | Variance            |
//! |-------------------|-----------------|-------------|---------------------|
//! | `deterministic`   | value c >= 0    | c           | 0                   |
//! | `exponential`     | rate r > 0      | 1/r         | 1/r^2               |
//! | `uniform`         | 0 <= low < high | (low+high)/2| (high-low)^2 / 12   |
//! | `gamma`           | shape k, scale s| k s         | k s^2               |
//! | `bernoulli-scaled`| prob p, value v | p v         | v^2 p (1-p)         |
//!
//! Sampling is inverse-CDF through counter-addressed uniform streams
//! ([`crate::rng`]), so one uniform maps deterministically to one variate.
//! That makes the shared-draw dependence mode (one uniform drives every row
//! of a customer) exact, and keeps realizations reproducible bit for bit.

pub mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realization::Realization;
use crate::rng::StreamState;

/// Stream id carrying the shared per-customer draw.
const SHARED_STREAM: u64 = u64::MAX;

/// A distribution family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DistributionSpec {
    /// Point mass at `value`.
    Deterministic { value: f64 },
    /// Exponential with the given `rate` (mean `1 / rate`).
    Exponential { rate: f64 },
    /// Uniform on `[low, high]`.
    Uniform { low: f64, high: f64 },
    /// Gamma with `shape` and `scale` (mean `shape * scale`).
    Gamma { shape: f64, scale: f64 },
    /// `value` with probability `prob`, zero otherwise.
    BernoulliScaled { prob: f64, value: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        use DistributionSpec::*;
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            Deterministic { value } => {
                if !value.is_finite() || value < 0.0 {
                    return fail(format!("deterministic requires value >= 0, got {value}"));
                }
            }
            Exponential { rate } => {
                if !rate.is_finite() || rate <= 0.0 {
                    return fail(format!("exponential requires rate > 0, got {rate}"));
                }
            }
            Uniform { low, high } => {
                if !low.is_finite() || !high.is_finite() || low < 0.0 || low >= high {
                    return fail(format!(
                        "uniform requires 0 <= low < high, got low={low}, high={high}"
                    ));
                }
            }
            Gamma { shape, scale } => {
                if !shape.is_finite() || !scale.is_finite() || shape <= 0.0 || scale <= 0.0 {
                    return fail(format!(
                        "gamma requires shape > 0 and scale > 0, got shape={shape}, scale={scale}"
                    ));
                }
            }
            BernoulliScaled { prob, value } => {
                if !prob.is_finite() || !(0.0..=1.0).contains(&prob) {
                    return fail(format!("bernoulli-scaled requires 0 <= prob <= 1, got {prob}"));
                }
                if !value.is_finite() || value < 0.0 {
                    return fail(format!("bernoulli-scaled requires value >= 0, got {value}"));
                }
            }
        }
        Ok(())
    }

    /// Exact analytic mean.
    pub fn mean(&self) -> f64 {
        use DistributionSpec::*;
        match *self {
            Deterministic { value } => value,
            Exponential { rate } => 1.0 / rate,
            Uniform { low, high } => 0.5 * (low + high),
            Gamma { shape, scale } => shape * scale,
            BernoulliScaled { prob, value } => prob * value,
        }
    }

    /// Exact analytic variance.
    pub fn variance(&self) -> f64 {
        use DistributionSpec::*;
        match *self {
            Deterministic { .. } => 0.0,
            Exponential { rate } => 1.0 / (rate * rate),
            Uniform { low, high } => (high - low) * (high - low) / 12.0,
            Gamma { shape, scale } => shape * scale * scale,
            BernoulliScaled { prob, value } => value * value * prob * (1.0 - prob),
        }
    }

    /// Quantile function (inverse CDF) at `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        use DistributionSpec::*;
        match *self {
            Deterministic { value } => value,
            Exponential { rate } => -(1.0 - u).ln() / rate,
            Uniform { low, high } => low + u * (high - low),
            Gamma { shape, scale } => scale * special::inv_reg_lower_gamma(shape, u),
            BernoulliScaled { prob, value } => {
                if u < 1.0 - prob {
                    0.0
                } else {
                    value
                }
            }
        }
    }

    /// Cumulative distribution function at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        use DistributionSpec::*;
        match *self {
            Deterministic { value } => {
                if x >= value {
                    1.0
                } else {
                    0.0
                }
            }
            Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (-rate * x).exp()
                }
            }
            Uniform { low, high } => ((x - low) / (high - low)).clamp(0.0, 1.0),
            Gamma { shape, scale } => special::reg_lower_gamma(shape, x / scale),
            BernoulliScaled { prob, value } => {
                if x < 0.0 {
                    0.0
                } else if x < value {
                    1.0 - prob
                } else {
                    1.0
                }
            }
        }
    }

    /// Variate at `counter` of `stream`.
    #[inline]
    pub fn sample(&self, stream: &StreamState, counter: u64) -> f64 {
        self.quantile(stream.uniform(counter))
    }
}

/// How the `M + 1` rows of one customer relate to each other.
///
/// Rows stay i.i.d. across customers in every mode; the modes only control
/// per-customer dependence across rows.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DependenceMode {
    /// All rows are mutually independent.
    #[default]
    Independent,
    /// A single uniform per customer drives every row through its quantile
    /// function (comonotone rows).
    SharedDraw,
    /// Every station serves customer n for the same sampled time; the
    /// interarrival row stays independent. Requires all stations to use the
    /// same service distribution.
    IdenticalService,
}

/// Validate a station list (index 0 = arrivals) together with a mode.
pub fn validate_stations(stations: &[DistributionSpec], mode: DependenceMode) -> Result<()> {
    if stations.len() < 2 {
        return Err(Error::InvalidParameter(
            "need an interarrival source and at least one service station".into(),
        ));
    }
    for s in stations {
        s.validate()?;
    }
    if mode == DependenceMode::IdenticalService {
        let first = &stations[1];
        if stations[2..].iter().any(|s| s != first) {
            return Err(Error::InvalidParameter(
                "identical-service mode requires every station to use the same service \
                 distribution"
                    .into(),
            ));
        }
    }
    Ok(())
}

/// Column-at-a-time sampler: produces the `M + 1` times of one customer.
///
/// Pure given `(stations, mode, seed)`; columns may be generated in any
/// order or concurrently.
#[derive(Debug, Clone)]
pub struct ColumnSampler<'a> {
    stations: &'a [DistributionSpec],
    mode: DependenceMode,
    streams: Vec<StreamState>,
    shared: StreamState,
}

impl<'a> ColumnSampler<'a> {
    pub fn new(stations: &'a [DistributionSpec], mode: DependenceMode, seed: u64) -> Result<Self> {
        validate_stations(stations, mode)?;
        let streams = (0..stations.len())
            .map(|i| StreamState::new(seed, i as u64))
            .collect();
        Ok(ColumnSampler {
            stations,
            mode,
            streams,
            shared: StreamState::new(seed, SHARED_STREAM),
        })
    }

    pub fn rows(&self) -> usize {
        self.stations.len()
    }

    /// Fill `out` (length `M + 1`) with the times of `customer` (1-based).
    pub fn column(&self, customer: usize, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.stations.len());
        let c = (customer - 1) as u64;
        match self.mode {
            DependenceMode::Independent => {
                for (i, spec) in self.stations.iter().enumerate() {
                    out[i] = spec.sample(&self.streams[i], c);
                }
            }
            DependenceMode::SharedDraw => {
                let u = self.shared.uniform(c);
                for (i, spec) in self.stations.iter().enumerate() {
                    out[i] = spec.quantile(u);
                }
            }
            DependenceMode::IdenticalService => {
                out[0] = self.stations[0].sample(&self.streams[0], c);
                let service = self.stations[1].sample(&self.streams[1], c);
                for slot in out.iter_mut().skip(1) {
                    *slot = service;
                }
            }
        }
    }
}

/// Sample a full `(M + 1) x n` realization.
///
/// Pure in `(stations, mode, n, seed)`: repeated calls are bitwise
/// identical, and row `i` does not depend on how many other rows exist.
pub fn sample_realization(
    stations: &[DistributionSpec],
    mode: DependenceMode,
    n: usize,
    seed: u64,
) -> Result<Realization> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one customer".into()));
    }
    let sampler = ColumnSampler::new(stations, mode, seed)?;
    let rows_count = sampler.rows();
    let mut rows = vec![vec![0.0; n]; rows_count];
    let mut col = vec![0.0; rows_count];
    for j in 1..=n {
        sampler.column(j, &mut col);
        for (i, value) in col.iter().enumerate() {
            rows[i][j - 1] = *value;
        }
    }
    Realization::from_rows(rows)
}

/// Exact `E[max(X, Y)]` for independent `X ~ a`, `Y ~ b`, where a closed
/// form is available:
///
/// - exponential with exponential: `1/r1 + 1/r2 − 1/(r1 + r2)`,
/// - deterministic with anything: `c + E[(Y − c)^+]`,
/// - uniform with uniform on the same support: `low + (high − low) * 2/3`.
///
/// Returns `None` otherwise; callers fall back to Monte Carlo.
pub fn exact_mean_pairwise_max(a: &DistributionSpec, b: &DistributionSpec) -> Option<f64> {
    use DistributionSpec::*;
    match (*a, *b) {
        (Deterministic { value }, ref other) | (ref other, Deterministic { value }) => {
            Some(value + expected_excess(other, value))
        }
        (Exponential { rate: r1 }, Exponential { rate: r2 }) => {
            Some(1.0 / r1 + 1.0 / r2 - 1.0 / (r1 + r2))
        }
        (Uniform { low: a1, high: b1 }, Uniform { low: a2, high: b2 })
            if a1 == a2 && b1 == b2 =>
        {
            Some(a1 + (b1 - a1) * 2.0 / 3.0)
        }
        _ => None,
    }
}

/// `E[(Y − c)^+]` for `Y ~ spec` and a constant `c >= 0`.
fn expected_excess(spec: &DistributionSpec, c: f64) -> f64 {
    use DistributionSpec::*;
    match *spec {
        Deterministic { value } => (value - c).max(0.0),
        Exponential { rate } => (-rate * c).exp() / rate,
        Uniform { low, high } => {
            if c >= high {
                0.0
            } else if c <= low {
                0.5 * (low + high) - c
            } else {
                (high - c) * (high - c) / (2.0 * (high - low))
            }
        }
        Gamma { shape, scale } => {
            let z = c / scale;
            shape * scale * special::reg_upper_gamma(shape + 1.0, z)
                - c * special::reg_upper_gamma(shape, z)
        }
        BernoulliScaled { prob, value } => prob * (value - c).max(0.0),
    }
}

/// Monte Carlo `E[max(X, Y)]` for independent draws, with its standard
/// error. Deterministic given `(samples, seed)`.
pub fn mean_pairwise_max_monte_carlo(
    a: &DistributionSpec,
    b: &DistributionSpec,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    let (mean, var) = pairwise_max_moments_monte_carlo(a, b, samples, seed)?;
    Ok((mean, (var / samples as f64).sqrt()))
}

/// Monte Carlo mean and variance of `max(X, Y)`.
pub fn pairwise_max_moments_monte_carlo(
    a: &DistributionSpec,
    b: &DistributionSpec,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    a.validate()?;
    b.validate()?;
    if samples < 2 {
        return Err(Error::InvalidParameter(
            "need at least two samples".into(),
        ));
    }
    let sa = StreamState::new(seed, 0);
    let sb = StreamState::new(seed, 1);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for c in 0..samples {
        let v = a.sample(&sa, c).max(b.sample(&sb, c));
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq - n * mean * mean) / (n - 1.0);
    Ok((mean, var.max(0.0)))
}

/// Mean and variance of `max(X, Y)`: exact for an exponential pair,
/// Monte Carlo otherwise (exact mean substituted when available).
pub fn pairwise_max_moments(
    a: &DistributionSpec,
    b: &DistributionSpec,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    use DistributionSpec::*;
    if let (Exponential { rate: r1 }, Exponential { rate: r2 }) = (*a, *b) {
        // max^2 + min^2 = X^2 + Y^2 and min is exponential with rate r1 + r2.
        let mean = 1.0 / r1 + 1.0 / r2 - 1.0 / (r1 + r2);
        let second = 2.0 / (r1 * r1) + 2.0 / (r2 * r2) - 2.0 / ((r1 + r2) * (r1 + r2));
        return Ok((mean, second - mean * mean));
    }
    let (mc_mean, mc_var) = pairwise_max_moments_monte_carlo(a, b, samples, seed)?;
    let mean = exact_mean_pairwise_max(a, b).unwrap_or(mc_mean);
    Ok((mean, mc_var))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MC_SEED: u64 = 0x00C0_FFEE;

    fn exp(rate: f64) -> DistributionSpec {
        DistributionSpec::Exponential { rate }
    }

    fn uni(low: f64, high: f64) -> DistributionSpec {
        DistributionSpec::Uniform { low, high }
    }

    #[test]
    fn parameter_validation() {
        assert!(exp(0.0).validate().is_err());
        assert!(exp(-1.0).validate().is_err());
        assert!(uni(-0.1, 1.0).validate().is_err());
        assert!(uni(1.0, 1.0).validate().is_err());
        assert!(DistributionSpec::Gamma { shape: 0.0, scale: 1.0 }.validate().is_err());
        assert!(DistributionSpec::Deterministic { value: -2.0 }.validate().is_err());
        assert!(DistributionSpec::BernoulliScaled { prob: 1.2, value: 1.0 }.validate().is_err());
        assert!(DistributionSpec::BernoulliScaled { prob: 0.5, value: 3.0 }.validate().is_ok());
    }

    #[test]
    fn exact_moments() {
        assert_eq!(uni(0.0, 1.0).mean(), 0.5);
        assert!((uni(0.0, 1.0).variance() - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(exp(2.0).mean(), 0.5);
        assert_eq!(exp(2.0).variance(), 0.25);
        let g = DistributionSpec::Gamma { shape: 2.0, scale: 0.5 };
        assert_eq!(g.mean(), 1.0);
        assert_eq!(g.variance(), 0.5);
        let b = DistributionSpec::BernoulliScaled { prob: 0.25, value: 4.0 };
        assert_eq!(b.mean(), 1.0);
        assert_eq!(b.variance(), 3.0);
    }

    #[test]
    fn quantile_cdf_round_trip() {
        let specs = [
            exp(1.7),
            uni(0.5, 2.5),
            DistributionSpec::Gamma { shape: 2.3, scale: 0.8 },
        ];
        for spec in &specs {
            for &p in &[0.01, 0.2, 0.5, 0.8, 0.99] {
                let x = spec.quantile(p);
                assert!((spec.cdf(x) - p).abs() < 1e-9, "{spec:?} p={p}");
            }
        }
    }

    #[test]
    fn deterministic_rows_are_constant() {
        let stations = vec![
            DistributionSpec::Deterministic { value: 2.0 },
            DistributionSpec::Deterministic { value: 2.0 },
        ];
        let r = sample_realization(&stations, DependenceMode::Independent, 3, 1).unwrap();
        for i in 0..2 {
            for j in 1..=3 {
                assert_eq!(r.tau(i, j), 2.0);
            }
        }
    }

    #[test]
    fn realizations_are_reproducible() {
        let stations = vec![exp(1.0), uni(0.0, 2.0), exp(0.5)];
        let a = sample_realization(&stations, DependenceMode::Independent, 500, 99).unwrap();
        let b = sample_realization(&stations, DependenceMode::Independent, 500, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_realization(&stations, DependenceMode::Independent, 500, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn row_streams_survive_adding_stations() {
        let two = vec![exp(1.0), exp(2.0)];
        let three = vec![exp(1.0), exp(2.0), exp(3.0)];
        let a = sample_realization(&two, DependenceMode::Independent, 100, 7).unwrap();
        let b = sample_realization(&three, DependenceMode::Independent, 100, 7).unwrap();
        assert_eq!(a.row(0), b.row(0));
        assert_eq!(a.row(1), b.row(1));
    }

    #[test]
    fn identical_service_rows_are_equal() {
        let stations = vec![exp(1.0), exp(2.0), exp(2.0), exp(2.0)];
        let r = sample_realization(&stations, DependenceMode::IdenticalService, 50, 3).unwrap();
        assert_eq!(r.row(1), r.row(2));
        assert_eq!(r.row(2), r.row(3));
        assert_ne!(r.row(0), r.row(1));
    }

    #[test]
    fn identical_service_rejects_mixed_stations() {
        let stations = vec![exp(1.0), exp(2.0), exp(3.0)];
        assert!(validate_stations(&stations, DependenceMode::IdenticalService).is_err());
    }

    #[test]
    fn shared_draw_is_comonotone() {
        // Same uniform through two scaled quantiles: row 2 = 2 * row 1.
        let stations = vec![uni(0.0, 1.0), uni(0.0, 1.0), uni(0.0, 2.0)];
        let r = sample_realization(&stations, DependenceMode::SharedDraw, 100, 11).unwrap();
        for j in 1..=100 {
            assert_eq!(r.tau(0, j), r.tau(1, j));
            assert!((r.tau(2, j) - 2.0 * r.tau(1, j)).abs() < 1e-15);
        }
    }

    #[test]
    fn samples_are_nonnegative() {
        let stations = vec![
            exp(0.3),
            DistributionSpec::Gamma { shape: 0.5, scale: 2.0 },
            DistributionSpec::BernoulliScaled { prob: 0.4, value: 1.5 },
        ];
        let r = sample_realization(&stations, DependenceMode::Independent, 10_000, 5).unwrap();
        for row in r.rows() {
            assert!(row.iter().all(|t| *t >= 0.0 && t.is_finite()));
        }
    }

    #[test]
    fn law_of_large_numbers_exponential() {
        let stations = vec![exp(1.0), exp(1.0)];
        let n = 1_000_000;
        let r = sample_realization(&stations, DependenceMode::Independent, n, 17).unwrap();
        let mean: f64 = r.row(1).iter().sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.005, "sample mean {mean}");
    }

    #[test]
    fn moment_consistency_all_families() {
        let specs = [
            exp(0.8),
            uni(0.25, 1.75),
            DistributionSpec::Gamma { shape: 2.0, scale: 0.5 },
            DistributionSpec::Gamma { shape: 0.7, scale: 1.3 },
            DistributionSpec::BernoulliScaled { prob: 0.3, value: 2.0 },
            DistributionSpec::Deterministic { value: 1.25 },
        ];
        let n = 1_000_000u64;
        for (k, spec) in specs.iter().enumerate() {
            let stream = StreamState::new(1000 + k as u64, 0);
            let mut sum = 0.0;
            for c in 0..n {
                sum += spec.sample(&stream, c);
            }
            let mean = sum / n as f64;
            let tol = 4.0 * (spec.variance() / n as f64).sqrt();
            assert!(
                (mean - spec.mean()).abs() <= tol.max(1e-12),
                "{spec:?}: sample mean {mean} vs exact {} (tol {tol})",
                spec.mean()
            );
        }
    }

    #[test]
    fn independent_rows_are_uncorrelated() {
        let stations = vec![exp(1.0), exp(1.0), uni(0.0, 2.0)];
        let n = 100_000;
        let r = sample_realization(&stations, DependenceMode::Independent, n, 23).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let a = r.row(i);
            let b = r.row(j);
            let ma = a.iter().sum::<f64>() / n as f64;
            let mb = b.iter().sum::<f64>() / n as f64;
            let mut cov = 0.0;
            let mut va = 0.0;
            let mut vb = 0.0;
            for k in 0..n {
                cov += (a[k] - ma) * (b[k] - mb);
                va += (a[k] - ma) * (a[k] - ma);
                vb += (b[k] - mb) * (b[k] - mb);
            }
            let corr = cov / (va * vb).sqrt();
            assert!(corr.abs() < 0.02, "rows {i},{j}: corr {corr}");
        }
    }

    #[test]
    fn exact_pairwise_max_exponential() {
        let got = exact_mean_pairwise_max(&exp(1.0), &exp(1.0)).unwrap();
        assert!((got - 1.5).abs() < 1e-15);
        // Monte Carlo oracle.
        let (mc, se) = mean_pairwise_max_monte_carlo(&exp(1.0), &exp(1.0), 1_000_000, MC_SEED)
            .unwrap();
        assert!((mc - got).abs() < 4.0 * se, "mc={mc} exact={got} se={se}");
    }

    #[test]
    fn exact_pairwise_max_uniform_same_support() {
        let got = exact_mean_pairwise_max(&uni(0.0, 1.0), &uni(0.0, 1.0)).unwrap();
        assert!((got - 2.0 / 3.0).abs() < 1e-15);
        let (mc, se) =
            mean_pairwise_max_monte_carlo(&uni(0.0, 1.0), &uni(0.0, 1.0), 1_000_000, MC_SEED)
                .unwrap();
        assert!((mc - got).abs() < 4.0 * se);
        // Different supports have no closed form here.
        assert!(exact_mean_pairwise_max(&uni(0.0, 1.0), &uni(0.0, 2.0)).is_none());
    }

    #[test]
    fn exact_pairwise_max_with_constant() {
        let det = |v| DistributionSpec::Deterministic { value: v };
        // max with zero is the identity in expectation.
        for spec in [exp(2.0), uni(0.5, 1.5), DistributionSpec::Gamma { shape: 2.0, scale: 0.5 }] {
            let got = exact_mean_pairwise_max(&det(0.0), &spec).unwrap();
            assert!((got - spec.mean()).abs() < 1e-12, "{spec:?}: {got}");
        }
        // Constant dominating the support.
        let got = exact_mean_pairwise_max(&uni(0.0, 1.0), &det(2.0)).unwrap();
        assert!((got - 2.0).abs() < 1e-15);
        // Interior constant against each family, Monte Carlo oracle.
        for spec in [
            exp(1.0),
            uni(0.0, 2.0),
            DistributionSpec::Gamma { shape: 2.0, scale: 0.5 },
            DistributionSpec::BernoulliScaled { prob: 0.6, value: 2.0 },
        ] {
            let exact = exact_mean_pairwise_max(&det(0.9), &spec).unwrap();
            let (mc, se) =
                mean_pairwise_max_monte_carlo(&det(0.9), &spec, 1_000_000, MC_SEED).unwrap();
            assert!(
                (mc - exact).abs() < 4.0 * se.max(1e-6),
                "{spec:?}: exact={exact} mc={mc} se={se}"
            );
        }
    }

    #[test]
    fn pairwise_max_moments_exponential_exact() {
        let (mean, var) = pairwise_max_moments(&exp(1.0), &exp(1.0), 2, 0).unwrap();
        assert!((mean - 1.5).abs() < 1e-15);
        // E[max^2] = 2 + 2 - 2/4 = 3.5, so var = 3.5 - 2.25 = 1.25.
        assert!((var - 1.25).abs() < 1e-15);
        // Monte Carlo cross-check of the variance.
        let (_, mc_var) =
            pairwise_max_moments_monte_carlo(&exp(1.0), &exp(1.0), 1_000_000, MC_SEED).unwrap();
        assert!((mc_var - var).abs() < 0.02, "mc_var={mc_var}");
    }
}
