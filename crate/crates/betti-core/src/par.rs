//! Parallel/sequential dispatch.
//!
//! With the `parallel` feature (the default) the heavy inner loops of row
//! reduction and resolution steps run on rayon. A process-wide switch lets
//! benchmarks compare both schedules in one binary. Either way the arithmetic
//! performed is identical, so results are bit-identical across schedules.

use std::sync::atomic::{AtomicBool, Ordering};

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Returns whether data-parallel execution is currently in effect.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

/// Switches data-parallel execution on or off at runtime. A no-op without
/// the `parallel` feature.
pub fn set_parallel_enabled(on: bool) {
    PARALLEL.store(on, Ordering::Relaxed);
}

/// Applies `f` to every chunk of `data` of length `chunk` (the last chunk may
/// be shorter), passing the chunk index. Chunks are disjoint, so the parallel
/// and sequential schedules produce identical memory contents.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    debug_assert!(chunk > 0);
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
            return;
        }
    }
    for (i, c) in data.chunks_mut(chunk).enumerate() {
        f(i, c);
    }
}

/// Maps `f` over `0..n` preserving order of results.
pub fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel_enabled() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}
