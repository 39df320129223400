//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature (on by default) [`map`] fans out over the
//! rayon thread pool; without it, it is a plain sequential map. Results
//! are returned in input order either way.

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
