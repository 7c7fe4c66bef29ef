//! Simulation and analysis of tandem single-server queueing systems.
//!
//! A tandem system is a series of `M` single-server stations: every customer
//! arrives at station 1, passes through all stations in order, and leaves the
//! system after service at station `M`. Given the interarrival times and the
//! per-station service times of the first `n` customers, the departure epoch
//! `D_i(n)` of the n-th customer from station `i` satisfies an exact max-plus
//! recursion, and the mean cycle time `gamma = lim D_M(n) / n` equals the
//! largest of the per-station mean times.
//!
//! The crate provides:
//!
//! - [`dist`]: random-variate families with exact analytic moments, sampled
//!   through counter-addressed streams ([`rng`]) with optional per-customer
//!   dependence modes.
//! - [`tandem`]: the departure recursion for infinite-buffer tandems, its
//!   explicit path-maximum form (an independent oracle), segment makespans,
//!   and empirical cycle-time traces.
//! - [`blocking`]: the two-station zero-capacity-buffer variants under the
//!   manufacturing and communication blocking rules, with their explicit
//!   solutions and a per-sample envelope on the upstream departures.
//! - [`bounds`]: classical bounds on expected maxima and the finite-n
//!   sandwich that pins `E[D_M(n)] / n` between the bottleneck mean and the
//!   bottleneck mean plus an `O(n^{-1/2})` correction.
//! - [`analysis`]: closed-form cycle time and throughput, Monte Carlo
//!   estimation with replication confidence intervals, and convergence
//!   studies over a grid of horizons.
//! - [`exec`]: the replication driver; data-parallel when the `parallel`
//!   feature (default) is enabled, sequential otherwise. Results do not
//!   depend on the choice.
//!
//! Everything is deterministic given a seed: variates are addressed by
//! `(seed, stream, counter)` rather than drawn from shared mutable state, so
//! parallel and sequential runs produce bitwise-identical results.

pub mod analysis;
pub mod blocking;
pub mod bounds;
pub mod dist;
pub mod error;
pub mod exec;
pub mod realization;
pub mod rng;
pub mod tandem;

pub use error::{Error, Result};
