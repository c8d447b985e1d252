//! Index-ordered map helpers for Monte-Carlo batches.
//!
//! Heavy inner loops (fading drops, coded blocks, symbol batches) are
//! expressed as a pure function of a batch index. [`map_indexed`] evaluates
//! that function over `0..n` with rayon when the `parallel` feature is on and
//! falls back to a plain sequential loop otherwise. Results are collected in
//! index order either way, so the two paths produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f` over `0..n`, in parallel when the `parallel` feature is
/// enabled. Output order matches the index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
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

/// Sequential twin of [`map_indexed`], available regardless of features.
/// Benches use it as the baseline side of the comparison.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let f = |i: usize| (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        assert_eq!(map_indexed(1000, f), map_indexed_seq(1000, f));
    }
}
