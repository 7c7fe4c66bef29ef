//! Replication driver.
//!
//! Replications are independent trajectories addressed by index, so they can
//! run in any order; [`map_replications`] fans them out across a rayon pool
//! when the `parallel` feature (default) is enabled and falls back to a
//! plain sequential loop otherwise. Because all randomness is
//! counter-addressed, both paths produce identical outputs; the criterion
//! bench suite compares their throughput.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over the replication indices `0..count`, in index order.
pub fn map_replications<T, F>(count: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Sequential reference implementation of [`map_replications`].
pub fn map_replications_serial<T, F>(count: u32, f: F) -> Vec<T>
where
    F: Fn(u32) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_serial_agree() {
        let f = |i: u32| (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        assert_eq!(map_replications(257, f), map_replications_serial(257, f));
        assert!(map_replications(0, f).is_empty());
    }
}
