//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature these fan out over rayon; without it
//! they degrade to plain iterator loops with identical results. Only
//! order-insensitive reductions (max, first-index) go through here, so output
//! bytes do not depend on thread scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Smallest index in `0..len` satisfying the predicate.
#[cfg(feature = "parallel")]
pub fn find_first_index<F>(len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..len).into_par_iter().find_first(|&i| pred(i))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first_index<F>(len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    (0..len).find(|&i| pred(i))
}

/// Maximum of `f` over the items; NaN-free inputs assumed.
#[cfg(feature = "parallel")]
pub fn max_f64<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    items
        .par_iter()
        .map(f)
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

#[cfg(not(feature = "parallel"))]
pub fn max_f64<T, F>(items: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64,
{
    items.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
}
