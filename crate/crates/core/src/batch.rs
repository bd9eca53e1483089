//! Data-parallel mapping over independent instances.
//!
//! Solvers are row-sequential, but sweeps over many grids are not. With the
//! `parallel` feature (on by default) [`Exec::Parallel`] spreads items over
//! the rayon pool; without it every mode runs on the calling thread.

/// How a batch is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// True when [`Exec::Parallel`] actually uses worker threads.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Applies `f` to every item, preserving order.
pub fn map_batch<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Applies `f` to every index in `0..count`, preserving order.
pub fn map_indices<R, F>(count: usize, exec: Exec, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}
