use decoherence_core::montecarlo::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Work-stealing executor on a dedicated rayon pool.
///
/// Results come back in index order, so the engine's reduction (and hence
/// every output bit) does not depend on the worker count.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `workers = None` uses one thread per available core.
    pub fn new(workers: Option<usize>) -> Result<Self, ThreadPoolBuildError> {
        let mut builder = ThreadPoolBuilder::new().thread_name(|i| format!("decoherence-{i}"));
        if let Some(w) = workers {
            builder = builder.num_threads(w.max(1));
        }
        Ok(Self {
            pool: builder.build()?,
        })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(
        &self,
        count: usize,
        job: F,
    ) -> Vec<T> {
        self.pool
            .install(|| (0..count).into_par_iter().map(job).collect())
    }
}
