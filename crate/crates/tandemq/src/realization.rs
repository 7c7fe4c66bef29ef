//! Sampled interarrival and service times for a fixed span of customers.

use crate::error::{Error, Result};

/// One sampled input to the departure recursions: row 0 holds interarrival
/// times, row `i >= 1` the service times at station `i`, column `j` the times
/// of customer `j + 1` (customers are numbered from 1 in accessors).
///
/// All entries are finite and nonnegative; every row has the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    rows: Vec<Vec<f64>>,
}

impl Realization {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidParameter(
                "a realization needs an interarrival row and at least one service row".into(),
            ));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "a realization needs at least one customer".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(t) = row.iter().find(|t| !t.is_finite() || **t < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "row {i} contains a negative or non-finite time {t}"
                )));
            }
        }
        Ok(Realization { rows })
    }

    /// Number of service stations `M` (rows minus the interarrival row).
    pub fn station_count(&self) -> usize {
        self.rows.len() - 1
    }

    /// Number of customers `N`.
    pub fn customers(&self) -> usize {
        self.rows[0].len()
    }

    /// Time of customer `customer` (1-based) in row `station`.
    #[inline]
    pub fn tau(&self, station: usize, customer: usize) -> f64 {
        self.rows[station][customer - 1]
    }

    pub fn row(&self, station: usize) -> &[f64] {
        &self.rows[station]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// A copy with `customer` (1-based) of row `station` replaced by `value`.
    pub fn with_tau(&self, station: usize, customer: usize, value: f64) -> Result<Self> {
        if station > self.station_count() || customer == 0 || customer > self.customers() {
            return Err(Error::OutOfBounds(format!(
                "station {station}, customer {customer}"
            )));
        }
        let mut rows = self.rows.clone();
        rows[station][customer - 1] = value;
        Realization::from_rows(rows)
    }
}
