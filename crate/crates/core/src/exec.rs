//! Data-parallel execution with a sequential fallback.
//!
//! Every exhaustive scan in the crate funnels through [`Exec`]. With the
//! `parallel` feature enabled (the default) `Exec::Parallel` dispatches to
//! rayon; without it both variants run on the calling thread. Results are
//! always returned in input order, so reports do not depend on scheduling.

/// How an exhaustive scan should be executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `true` when work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Smallest index `i` in `0..len` for which `f(i)` is `Some`, together
    /// with its value. Deterministic regardless of the execution mode.
    pub fn find_first<R, F>(self, len: usize, f: F) -> Option<(usize, R)>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..len)
                .into_par_iter()
                .filter_map(|i| f(i).map(|r| (i, r)))
                .find_first(|_| true);
        }
        (0..len).find_map(|i| f(i).map(|r| (i, r)))
    }
}
