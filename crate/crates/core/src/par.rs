//! Data-parallel map over index ranges.
//!
//! With the `parallel` feature (default) `Execution::Parallel` fans work out
//! over the rayon pool; without it, both variants run sequentially. Outputs
//! are always returned in index order, so callers see identical results under
//! either execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work concurrently.
    pub fn is_concurrent(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `(0..count).map(f)` collected in order.
pub fn map_indexed<T, F>(exec: Execution, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    map_indexed_init(exec, count, || (), |_, i| f(i))
}

/// Like [`map_indexed`] but each worker owns scratch state built by `init`
/// and reused across the indices it processes.
pub fn map_indexed_init<S, T, I, F>(exec: Execution, count: u64, init: I, f: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        return (0..count).into_par_iter().map_init(init, f).collect();
    }
    let _ = exec;
    let mut scratch = init();
    (0..count).map(|i| f(&mut scratch, i)).collect()
}

/// Configure the global pool. Honors `SUBLINEAR_MATCH_THREADS` when `threads`
/// is `None`. Calling it twice is harmless; the first configuration wins.
pub fn configure_threads(threads: Option<usize>) {
    let threads = threads.or_else(|| {
        std::env::var("SUBLINEAR_MATCH_THREADS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    });
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let seq = map_indexed(Execution::Sequential, 1000, |i| i * i);
        let par = map_indexed(Execution::Parallel, 1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn init_scratch_is_reused() {
        let out = map_indexed_init(Execution::Sequential, 5, Vec::<u64>::new, |buf, i| {
            buf.push(i);
            buf.len()
        });
        assert_eq!(out, vec![1, 2, 3, 4, 5]);
    }
}
