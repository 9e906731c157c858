use lgbound_core::scans::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "LGBOUND_THREADS";

/// Data-parallel executor on a dedicated rayon pool.
///
/// Results come back in index order, so output does not depend on the
/// thread count.
pub struct RayonExecutor {
    pool: ThreadPool,
}

impl RayonExecutor {
    /// Pool with `threads` workers, or rayon's default when `None`.
    pub fn new(threads: Option<usize>) -> Result<Self, ThreadPoolBuildError> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        Ok(RayonExecutor { pool: builder.build()? })
    }

    /// Number of worker threads.
    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for RayonExecutor {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..count).into_par_iter().map(f).collect())
    }
}

/// Thread cap from the flag, else from the environment value.
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> Result<Option<usize>, String> {
    let n = match (flag, env) {
        (Some(n), _) => n,
        (None, Some(raw)) => raw
            .trim()
            .parse()
            .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?,
        (None, None) => return Ok(None),
    };
    if n == 0 {
        return Err("thread count must be at least 1".into());
    }
    Ok(Some(n))
}
