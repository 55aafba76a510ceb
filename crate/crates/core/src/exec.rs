//! Execution strategy for the data-parallel inner loops.
//!
//! Every parallel loop in the crate goes through these helpers, so the
//! sequential and parallel paths compute identical, order-independent results.
//! Without the `parallel` feature, [`Exec::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `(0..n).map(f)`, collected in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Smallest index in `0..n` satisfying `pred`.
    pub fn find_first<F>(self, n: u64, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_first(|&i| pred(i));
        }
        (0..n).find(|&i| pred(i))
    }

    pub fn all<F>(self, n: u64, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        self.find_first(n, |i| !pred(i)).is_none()
    }
}
