//! Order-preserving data-parallel map, backed by rayon when the `parallel`
//! feature is enabled and sequential otherwise.

/// Worker configuration for census-style workloads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exec {
    workers: usize,
}

impl Default for Exec {
    fn default() -> Self {
        Exec::sequential()
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec { workers: 1 }
    }

    /// `workers = 0` means one per available core.
    pub fn new(workers: usize) -> Self {
        let workers = if workers == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            workers
        };
        Exec { workers }
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.workers > 1
    }

    /// `(0..n).map(f)` with results in index order.
    pub fn map_range<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.workers > 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool");
            return pool.install(|| (0..n).into_par_iter().map(&f).collect());
        }
        (0..n).map(f).collect()
    }

    /// `items.iter().map(f)` with results in input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }
}
