//! Data-parallel execution helpers.
//!
//! Independent work items (scan points, per-term measurements) run through
//! [`map_range`]. With the default `parallel` feature the map runs on the
//! rayon pool; without it the same closure runs on a plain iterator. Results
//! are collected in index order and reduced sequentially by callers, so both
//! paths produce bit-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Apply `f` to every index in `0..n`, preserving index order in the output.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_range`], always available. Benches use it to
/// compare scheduling overhead against the parallel path on the same build.
pub fn map_range_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let a = map_range(100, |i| i * i);
        let b = map_range_seq(100, |i| i * i);
        assert_eq!(a, b);
    }
}
