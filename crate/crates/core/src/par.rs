//! Ordered parallel map. Falls back to a sequential loop without the
//! `parallel` feature (the wasm build has no threads) and for short ranges.

const SEQUENTIAL_BELOW: usize = 64;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<R, F>(range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if range.len() < SEQUENTIAL_BELOW {
        return range.map(f).collect();
    }
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<R, F>(range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    let _ = SEQUENTIAL_BELOW;
    range.map(f).collect()
}
