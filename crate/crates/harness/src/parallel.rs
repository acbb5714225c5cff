//! Trials run on a rayon pool whose size is capped by `LOL_THREADS`.

use rayon::prelude::*;

use crate::error::{HarnessError, Result};

pub const THREADS_VAR: &str = "LOL_THREADS";

/// Worker count: the available parallelism, capped by `LOL_THREADS` when set.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => cap.min(available),
        _ => available,
    }
}

/// Runs `f(0..trials)` in parallel and returns the results in trial order. The
/// first failing trial, by index, determines the error.
pub fn run_trials<T, F>(trials: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<T>> = pool.install(|| (0..trials).into_par_iter().map(&f).collect());
    results.into_iter().collect()
}
