//! Optional data parallelism.
//!
//! With the `parallel` feature (on by default) work is spread over a rayon
//! pool; without it, or with [`Execution::Sequential`], everything runs on the
//! calling thread. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch of independent work items is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// A dedicated pool with this many workers.
    Parallel {
        jobs: usize,
    },
}

impl Execution {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { jobs }
        }
    }

    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel { jobs } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("rayon thread pool");
            // one item per task: per-prime costs vary by orders of magnitude
            pool.install(|| items.par_iter().with_max_len(1).map(f).collect())
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel { .. } => items.iter().map(f).collect(),
    }
}
