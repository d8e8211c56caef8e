//! Data-parallel map used by the enumeration and classification pipelines.
//!
//! With the `parallel` feature (default) work fans out over rayon's global
//! pool, or a caller-installed one. Without it, or with
//! [`Execution::Sequential`], everything runs on the calling thread. Results
//! always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}


impl Execution {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Maps over `0..n`, concatenating the per-index outputs in index order.
    pub fn flat_map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> Vec<R> + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).flat_map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                let parts: Vec<Vec<R>> = (0..n).into_par_iter().map(f).collect();
                parts.into_iter().flatten().collect()
            }
        }
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().all(f),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().all(f),
        }
    }
}
