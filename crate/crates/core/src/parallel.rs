//! The shared worker pool for grid scans.
//!
//! `WRO_THREADS` caps the number of workers. Every scan reduces its per-point
//! results in grid order, so outputs never depend on the worker count.

use std::sync::OnceLock;

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "WRO_THREADS";

fn requested_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0)
}

/// The process-wide pool; its size is fixed by `WRO_THREADS` on first use
/// (0 or unset lets rayon choose).
pub fn pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        ThreadPoolBuilder::new()
            .num_threads(requested_threads())
            .thread_name(|i| format!("wro-scan-{i}"))
            .build()
            .expect("thread pool construction")
    })
}
