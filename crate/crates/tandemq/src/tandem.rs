//! Departure-epoch recursion for tandems with infinite buffers.
//!
//! With `D_i(0) = 0`, the departure epochs satisfy
//!
//! ```text
//! D_0(n) = D_0(n-1) + tau_0n
//! D_m(n) = max(D_{m-1}(n), D_m(n-1)) + tau_mn,   m = 1..M
//! ```
//!
//! Resolving the recursion gives the explicit path-maximum form
//!
//! ```text
//! D_m(n) = max over 1 <= k_1 <= ... <= k_m <= n of
//!          sum_{j<=k_1} tau_0j + sum_{k_1<=j<=k_2} tau_1j + ... + sum_{k_m<=j<=n} tau_mj
//! ```
//!
//! where adjacent segment sums share their boundary index. The recursion is
//! the workhorse; [`explicit_solution`] enumerates the tuples directly and
//! serves as an independent oracle for it.

use crate::error::{Error, Result};
use crate::realization::Realization;

/// Default cap on the number of index tuples [`explicit_solution`] will
/// enumerate.
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;

/// Full matrix of departure epochs `D_i(n)`, `i = 0..=M`, `n = 0..=N`,
/// with `D_i(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DepartureSchedule {
    rows: Vec<Vec<f64>>,
}

impl DepartureSchedule {
    pub(crate) fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        DepartureSchedule { rows }
    }

    /// Number of service stations `M`.
    pub fn station_count(&self) -> usize {
        self.rows.len() - 1
    }

    /// Number of customers `N`.
    pub fn customers(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// Departure epoch `D_station(n)`; `n = 0` gives the initial condition 0.
    #[inline]
    pub fn epoch(&self, station: usize, n: usize) -> f64 {
        self.rows[station][n]
    }

    /// Epochs `D_station(0..=N)` of one station.
    pub fn station_row(&self, station: usize) -> &[f64] {
        &self.rows[station]
    }

    /// Epochs of the last station (system departures).
    pub fn last_station(&self) -> &[f64] {
        self.rows.last().expect("schedule has rows")
    }
}

/// Run the departure recursion over the whole realization, retaining every
/// epoch. `O(M n)` time, `O(M n)` memory.
pub fn run_recursion(r: &Realization) -> DepartureSchedule {
    let m = r.station_count();
    let n = r.customers();
    let mut rows = vec![vec![0.0; n + 1]; m + 1];
    for j in 1..=n {
        rows[0][j] = rows[0][j - 1] + r.tau(0, j);
        for i in 1..=m {
            rows[i][j] = rows[i - 1][j].max(rows[i][j - 1]) + r.tau(i, j);
        }
    }
    DepartureSchedule::from_rows(rows)
}

/// Makespan of the customer segment `l + 1 ..= n` run through an initially
/// empty tandem: the last-station departure epoch when only that segment is
/// served. `segment_makespan(r, 0, n)` equals `run_recursion(r)`'s
/// `D_M(n)`.
///
/// The family is subadditive: for `l < k < n` the segment over `(l, n]` can
/// never finish later than the `(l, k]` and `(k, n]` segments run back to
/// back.
///
/// Rolling `O(M)` memory.
pub fn segment_makespan(r: &Realization, l: usize, n: usize) -> Result<f64> {
    if n > r.customers() || l >= n {
        return Err(Error::OutOfBounds(format!(
            "segment ({l}, {n}] in a realization of {} customers",
            r.customers()
        )));
    }
    let m = r.station_count();
    let mut d = vec![0.0; m + 1];
    for j in (l + 1)..=n {
        d[0] += r.tau(0, j);
        for i in 1..=m {
            d[i] = d[i - 1].max(d[i]) + r.tau(i, j);
        }
    }
    Ok(d[m])
}

/// Number of nondecreasing index tuples `1 <= k_1 <= ... <= k_m <= n`.
pub fn tuple_count(m: usize, n: usize) -> u128 {
    // binomial(n + m - 1, m)
    let mut result: u128 = 1;
    for i in 0..m {
        result = result * (n + m - 1 - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Explicit path-maximum solution for `D_m(n)`, evaluated by exhaustive
/// enumeration of the index tuples.
///
/// Deliberately brute force so it stays independent of [`run_recursion`];
/// instances with more than `budget` tuples are rejected.
pub fn explicit_solution(r: &Realization, m: usize, n: usize, budget: u64) -> Result<f64> {
    if m == 0 || m > r.station_count() {
        return Err(Error::OutOfBounds(format!(
            "station {m} of {}",
            r.station_count()
        )));
    }
    if n == 0 || n > r.customers() {
        return Err(Error::OutOfBounds(format!(
            "customer {n} of {}",
            r.customers()
        )));
    }
    if tuple_count(m, n) > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{} tuples for m={m}, n={n}, budget {budget}",
            tuple_count(m, n)
        )));
    }

    let mut best = f64::NEG_INFINITY;
    // Choose k_1 and seed the descent with sum_{j<=k_1} tau_0j.
    let mut head = 0.0;
    for k1 in 1..=n {
        head += r.tau(0, k1);
        descend(r, 1, m, n, k1, head, &mut best);
    }
    Ok(best)
}

/// Extend a partial path that has fixed `k_1..k_i` (rows `0..i` summed) by
/// choosing the remaining boundaries.
fn descend(r: &Realization, i: usize, m: usize, n: usize, k_i: usize, partial: f64, best: &mut f64) {
    if i == m {
        let mut tail = 0.0;
        for j in k_i..=n {
            tail += r.tau(m, j);
        }
        if partial + tail > *best {
            *best = partial + tail;
        }
        return;
    }
    let mut segment = 0.0;
    for k_next in k_i..=n {
        segment += r.tau(i, k_next);
        descend(r, i + 1, m, n, k_next, partial + segment, best);
    }
}

/// Empirical cycle-time trace `(n, D_M(n) / n)` for `n = 1..=N`.
pub fn cycle_time_trace(r: &Realization) -> Vec<(usize, f64)> {
    let schedule = run_recursion(r);
    schedule
        .last_station()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, d)| (n, d / n as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{sample_realization, DependenceMode, DistributionSpec};
    use crate::rng::derive_seed;

    fn det_system(m: usize, n: usize, value: f64) -> Realization {
        Realization::from_rows(vec![vec![value; n]; m + 1]).unwrap()
    }

    #[test]
    fn deterministic_single_station() {
        // All times 1: D_0(n) = n, the server is always ready, D_1(n) = n + 1.
        let r = det_system(1, 10, 1.0);
        let s = run_recursion(&r);
        for n in 1..=10 {
            assert!((s.epoch(0, n) - n as f64).abs() < 1e-12);
            assert!((s.epoch(1, n) - (n as f64 + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_customer_traverses_all_stations() {
        let r = Realization::from_rows(vec![vec![0.7], vec![1.3], vec![0.4]]).unwrap();
        let s = run_recursion(&r);
        assert!((s.epoch(2, 1) - (0.7 + 1.3 + 0.4)).abs() < 1e-12);
    }

    #[test]
    fn explicit_solution_small_cases() {
        let r = Realization::from_rows(vec![vec![2.0, 0.5], vec![1.0, 3.0]]).unwrap();
        // m=1, n=1: tau_01 + tau_11
        assert!((explicit_solution(&r, 1, 1, 100).unwrap() - 3.0).abs() < 1e-12);
        // m=1, n=2: max(t01+t11+t12, t01+t02+t12) = max(6.0, 5.5)
        assert!((explicit_solution(&r, 1, 2, 100).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn explicit_solution_matches_recursion_m2_n3() {
        let stations = vec![
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 1.3 },
            DistributionSpec::Exponential { rate: 0.7 },
        ];
        for rep in 0..200 {
            let r =
                sample_realization(&stations, DependenceMode::Independent, 3, derive_seed(5, rep))
                    .unwrap();
            let s = run_recursion(&r);
            let got = explicit_solution(&r, 2, 3, DEFAULT_TUPLE_BUDGET).unwrap();
            assert!((got - s.epoch(2, 3)).abs() < 1e-9);
        }
    }

    #[test]
    fn tuple_counting_and_budget() {
        assert_eq!(tuple_count(1, 2), 2);
        assert_eq!(tuple_count(2, 3), 6);
        assert_eq!(tuple_count(3, 8), 120);
        let r = det_system(2, 3, 1.0);
        assert!(matches!(
            explicit_solution(&r, 2, 3, 5),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn segment_makespan_identities() {
        let stations = vec![
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Uniform { low: 0.0, high: 2.0 },
        ];
        let r = sample_realization(&stations, DependenceMode::Independent, 12, 9).unwrap();
        let s = run_recursion(&r);
        for n in 1..=12 {
            let z = segment_makespan(&r, 0, n).unwrap();
            assert!((z - s.epoch(1, n)).abs() < 1e-12);
            assert!(z >= 0.0);
        }
        // Deterministic all-ones: segment (l, n] takes (n - l) + 1.
        let d = det_system(1, 10, 1.0);
        for l in 0..9 {
            for n in (l + 1)..=10 {
                let z = segment_makespan(&d, l, n).unwrap();
                assert!((z - ((n - l) as f64 + 1.0)).abs() < 1e-12);
            }
        }
        assert!(segment_makespan(&r, 3, 3).is_err());
        assert!(segment_makespan(&r, 0, 13).is_err());
    }

    #[test]
    fn segment_makespan_subadditive_sample() {
        let stations = vec![
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 1.0 },
        ];
        let r = sample_realization(&stations, DependenceMode::Independent, 5, 21).unwrap();
        let whole = segment_makespan(&r, 0, 5).unwrap();
        let first = segment_makespan(&r, 0, 3).unwrap();
        let second = segment_makespan(&r, 3, 5).unwrap();
        assert!(whole <= first + second + 1e-9);
    }

    #[test]
    fn trace_of_deterministic_system() {
        let r = det_system(1, 100, 1.0);
        let trace = cycle_time_trace(&r);
        assert_eq!(trace.len(), 100);
        for &(n, value) in &trace {
            assert!((value - (n as f64 + 1.0) / n as f64).abs() < 1e-12);
        }
        // n = 1 is the whole sojourn of the first customer.
        assert!((trace[0].1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_approaches_bottleneck_mean() {
        let stations = vec![
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 1.0 },
            DistributionSpec::Exponential { rate: 1.0 },
        ];
        let r = sample_realization(&stations, DependenceMode::Independent, 100_000, 31).unwrap();
        let trace = cycle_time_trace(&r);
        let last = trace.last().unwrap().1;
        assert!((last - 1.0).abs() < 0.05, "final trace value {last}");
    }
}
