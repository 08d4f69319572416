//! Parallel bucketed counting.
//!
//! Start vertices are independent, so workers claim batches of them and run
//! the same per-vertex bucket scan as the sequential counter, each against a
//! private scratch table. Partial sums are integers, so the merged counts
//! are identical for every worker count and schedule.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use crate::count::{bucket_start_vertex, BucketScratch, CountError, CountReport, StartTotals};
use crate::graph::SignedBipartiteGraph;

/// How start vertices are handed to workers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chunking {
    /// One contiguous block per worker, fixed up front.
    Static,
    /// Shrinking batches from a shared cursor, never smaller than `min_chunk`.
    Guided { min_chunk: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct ParallelConfig {
    pub worker_count: NonZeroUsize,
    pub chunking: Chunking,
}

impl ParallelConfig {
    pub fn with_workers(worker_count: NonZeroUsize) -> Self {
        ParallelConfig {
            worker_count,
            chunking: Chunking::Guided { min_chunk: 16 },
        }
    }
}

impl Default for ParallelConfig {
    fn default() -> Self {
        let workers =
            thread::available_parallelism().unwrap_or(NonZeroUsize::new(1).expect("nonzero"));
        Self::with_workers(workers)
    }
}

#[derive(Default)]
struct Partial {
    balanced: u128,
    unbalanced: u128,
    wedges: u64,
}

impl Partial {
    fn absorb(&mut self, t: StartTotals) -> Result<(), CountError> {
        self.balanced = self
            .balanced
            .checked_add(t.balanced)
            .ok_or(CountError::Overflow)?;
        self.unbalanced = self
            .unbalanced
            .checked_add(t.unbalanced)
            .ok_or(CountError::Overflow)?;
        self.wedges += t.wedges;
        Ok(())
    }
}

/// Claims the next guided batch: proportional to the remaining work but
/// never below `min_chunk`.
fn claim_guided(
    cursor: &AtomicUsize,
    n: usize,
    workers: usize,
    min_chunk: usize,
) -> Option<std::ops::Range<usize>> {
    loop {
        let begin = cursor.load(Ordering::Relaxed);
        if begin >= n {
            return None;
        }
        let size = ((n - begin) / (2 * workers)).max(min_chunk);
        let end = (begin + size).min(n);
        if cursor
            .compare_exchange(begin, end, Ordering::Relaxed, Ordering::Relaxed)
            .is_ok()
        {
            return Some(begin..end);
        }
    }
}

/// Parallel variant of [`crate::count::bb_bucket`]. Counts are identical to
/// the sequential run for every configuration.
pub fn par_bb_bucket(
    graph: &SignedBipartiteGraph,
    config: &ParallelConfig,
) -> Result<CountReport, CountError> {
    let start = Instant::now();
    let order = graph.compute_priority();
    let n = graph.vertex_count();
    let workers = config.worker_count.get();

    // Hand out heavy (high-degree) vertices first to smooth skew.
    let starts: Vec<u32> = order.vertices_by_rank().iter().rev().copied().collect();
    let cursor = AtomicUsize::new(0);

    let merged = thread::scope(|s| -> Result<Partial, CountError> {
        let handles: Vec<_> = (0..workers)
            .map(|worker| {
                let starts = &starts;
                let order = &order;
                let cursor = &cursor;
                s.spawn(move || -> Result<Partial, CountError> {
                    let mut scratch = BucketScratch::new(n);
                    let mut partial = Partial::default();
                    let mut run = |range: std::ops::Range<usize>,
                                   partial: &mut Partial|
                     -> Result<(), CountError> {
                        for &u in &starts[range] {
                            partial.absorb(bucket_start_vertex(graph, order, u, &mut scratch)?)?;
                        }
                        Ok(())
                    };
                    match config.chunking {
                        Chunking::Static => {
                            run(
                                worker * n / workers..(worker + 1) * n / workers,
                                &mut partial,
                            )?;
                        }
                        Chunking::Guided { min_chunk } => {
                            while let Some(range) =
                                claim_guided(cursor, n, workers, min_chunk.max(1))
                            {
                                run(range, &mut partial)?;
                            }
                        }
                    }
                    Ok(partial)
                })
            })
            .collect();

        // Merge in worker-index order.
        let mut merged = Partial::default();
        for h in handles {
            let p = h.join().expect("counting worker panicked")?;
            merged.balanced = merged
                .balanced
                .checked_add(p.balanced)
                .ok_or(CountError::Overflow)?;
            merged.unbalanced = merged
                .unbalanced
                .checked_add(p.unbalanced)
                .ok_or(CountError::Overflow)?;
            merged.wedges += p.wedges;
        }
        Ok(merged)
    })?;

    Ok(CountReport {
        balanced: merged.balanced,
        unbalanced: merged.unbalanced,
        total: merged
            .balanced
            .checked_add(merged.unbalanced)
            .ok_or(CountError::Overflow)?,
        wedges_processed: merged.wedges,
        pair_checks: 0,
        wall_time: start.elapsed(),
    })
}
