//! Exact balanced-butterfly counting.
//!
//! A butterfly is a 4-cycle on two left and two right vertices; it is
//! balanced when it carries an even number of negative edges. Three exact
//! counters are provided:
//!
//! * [`brute_force_count`] enumerates vertex quadruples directly and serves
//!   as the independent oracle for everything else.
//! * [`bb_base`] enumerates priority-pruned wedges, groups them by end
//!   vertex, and checks every middle pair for balance.
//! * [`bb_bucket`] runs the same wedge scan but only tallies symmetric and
//!   asymmetric wedge counts per end vertex; balanced butterflies through a
//!   (start, end) pair are then `C(l,2) + C(m,2)` and unbalanced ones
//!   `l * m`, with no per-pair sign checks at all.
//!
//! [`vbbfc`] counts butterflies containing one given vertex by the same
//! bucketing idea with the rank pruning dropped.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{GraphError, PriorityOrder, Sign, SignedBipartiteGraph, VertexRef};

/// Wedges whose two edges agree in sign are symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeClass {
    Symmetric,
    Asymmetric,
}

/// Classifies a wedge by its two edge signs.
#[inline]
pub fn classify_wedge(s1: Sign, s2: Sign) -> WedgeClass {
    if s1 == s2 {
        WedgeClass::Symmetric
    } else {
        WedgeClass::Asymmetric
    }
}

/// True iff the four edge signs of a butterfly contain an even number of
/// negatives. Order-independent.
#[inline]
pub fn is_balanced(s1: Sign, s2: Sign, s3: Sign, s4: Sign) -> bool {
    s1.product(s2).product(s3.product(s4)).is_positive()
}

#[inline]
fn choose2(k: u64) -> u128 {
    let k = k as u128;
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// Balanced butterflies through one (start, end) pair with `l` symmetric and
/// `m` asymmetric wedges: `C(l,2) + C(m,2)`.
#[inline]
pub fn pair_contribution(l: u64, m: u64) -> u128 {
    choose2(l) + choose2(m)
}

/// Totals from one counting run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountReport {
    pub balanced: u128,
    pub unbalanced: u128,
    pub total: u128,
    /// Priority-eligible wedges enumerated during the scan.
    pub wedges_processed: u64,
    /// Middle-pair balance checks performed (baseline only; zero elsewhere).
    pub pair_checks: u128,
    pub wall_time: Duration,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("input too large for brute force: {left} x {right} exceeds {limit} cells")]
    TooLarge {
        left: usize,
        right: usize,
        limit: u64,
    },
    #[error("count overflowed the 128-bit accumulator")]
    Overflow,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cell-count guard for [`brute_force_count`].
pub const BRUTE_FORCE_CELL_LIMIT: u64 = 1_000_000;

#[inline]
fn add(acc: &mut u128, v: u128) -> Result<(), CountError> {
    *acc = acc.checked_add(v).ok_or(CountError::Overflow)?;
    Ok(())
}

/// Exact count by enumerating every left pair against every right pair.
///
/// Refuses graphs with more than [`BRUTE_FORCE_CELL_LIMIT`] adjacency cells;
/// use [`brute_force_count_unbounded`] to override.
pub fn brute_force_count(graph: &SignedBipartiteGraph) -> Result<CountReport, CountError> {
    let cells = graph.left_count() as u64 * graph.right_count() as u64;
    if cells > BRUTE_FORCE_CELL_LIMIT {
        return Err(CountError::TooLarge {
            left: graph.left_count(),
            right: graph.right_count(),
            limit: BRUTE_FORCE_CELL_LIMIT,
        });
    }
    brute_force_count_unbounded(graph)
}

/// [`brute_force_count`] without the size guard.
pub fn brute_force_count_unbounded(
    graph: &SignedBipartiteGraph,
) -> Result<CountReport, CountError> {
    let start = Instant::now();
    let (lc, rc) = (graph.left_count(), graph.right_count());
    let mut matrix: Vec<Option<Sign>> = vec![None; lc * rc];
    for (l, r, s) in graph.edges() {
        matrix[l as usize * rc + r as usize] = Some(s);
    }

    let mut report = CountReport::default();
    for ui in 0..lc {
        for uj in ui + 1..lc {
            for vi in 0..rc {
                let (a, c) = (matrix[ui * rc + vi], matrix[uj * rc + vi]);
                if a.is_none() || c.is_none() {
                    continue;
                }
                for vj in vi + 1..rc {
                    if let (Some(b), Some(d)) = (matrix[ui * rc + vj], matrix[uj * rc + vj]) {
                        if is_balanced(a.unwrap(), b, c.unwrap(), d) {
                            add(&mut report.balanced, 1)?;
                        } else {
                            add(&mut report.unbalanced, 1)?;
                        }
                    }
                }
            }
        }
    }
    report.total = report
        .balanced
        .checked_add(report.unbalanced)
        .ok_or(CountError::Overflow)?;
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Baseline counter: store every eligible wedge's two signs per end vertex,
/// then balance-check each unordered middle pair.
pub fn bb_base(graph: &SignedBipartiteGraph) -> Result<CountReport, CountError> {
    let start = Instant::now();
    let order = graph.compute_priority();
    let n = graph.vertex_count();

    // Per-end-vertex wedge records, reused across start vertices.
    let mut records: Vec<Vec<(Sign, Sign)>> = vec![Vec::new(); n];
    let mut touched: Vec<u32> = Vec::new();

    let mut report = CountReport::default();
    for u in 0..n as u32 {
        let ru = order.rank(u);
        for (v, s_uv) in graph.neighbors(u) {
            if order.rank(v) >= ru {
                break;
            }
            for (w, s_vw) in graph.neighbors(v) {
                if order.rank(w) >= ru {
                    break;
                }
                if records[w as usize].is_empty() {
                    touched.push(w);
                }
                records[w as usize].push((s_uv, s_vw));
                report.wedges_processed += 1;
            }
        }
        for &w in &touched {
            let list = &records[w as usize];
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    add(&mut report.pair_checks, 1)?;
                    let (a, b) = (list[i], list[j]);
                    if is_balanced(a.0, a.1, b.0, b.1) {
                        add(&mut report.balanced, 1)?;
                    } else {
                        add(&mut report.unbalanced, 1)?;
                    }
                }
            }
        }
        for &w in &touched {
            records[w as usize].clear();
        }
        touched.clear();
    }
    report.total = report
        .balanced
        .checked_add(report.unbalanced)
        .ok_or(CountError::Overflow)?;
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Scratch tables for one bucket scan: symmetric and asymmetric wedge counts
/// per end vertex, with a touched list for O(touched) clearing.
pub(crate) struct BucketScratch {
    b1: Vec<u64>,
    b2: Vec<u64>,
    touched: Vec<u32>,
}

impl BucketScratch {
    pub(crate) fn new(n: usize) -> Self {
        BucketScratch {
            b1: vec![0; n],
            b2: vec![0; n],
            touched: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct StartTotals {
    pub balanced: u128,
    pub unbalanced: u128,
    pub wedges: u64,
}

/// Bucket scan for one start vertex; shared by the sequential and parallel
/// counters so their per-vertex contributions are identical by construction.
pub(crate) fn bucket_start_vertex(
    graph: &SignedBipartiteGraph,
    order: &PriorityOrder,
    u: u32,
    scratch: &mut BucketScratch,
) -> Result<StartTotals, CountError> {
    let ru = order.rank(u);
    let mut totals = StartTotals::default();
    for (v, s_uv) in graph.neighbors(u) {
        if order.rank(v) >= ru {
            break;
        }
        for (w, s_vw) in graph.neighbors(v) {
            if order.rank(w) >= ru {
                break;
            }
            let wi = w as usize;
            if scratch.b1[wi] == 0 && scratch.b2[wi] == 0 {
                scratch.touched.push(w);
            }
            match classify_wedge(s_uv, s_vw) {
                WedgeClass::Symmetric => scratch.b1[wi] += 1,
                WedgeClass::Asymmetric => scratch.b2[wi] += 1,
            }
            totals.wedges += 1;
        }
    }
    for &w in &scratch.touched {
        let (l, m) = (scratch.b1[w as usize], scratch.b2[w as usize]);
        totals.balanced = totals
            .balanced
            .checked_add(pair_contribution(l, m))
            .ok_or(CountError::Overflow)?;
        totals.unbalanced = totals
            .unbalanced
            .checked_add(l as u128 * m as u128)
            .ok_or(CountError::Overflow)?;
        scratch.b1[w as usize] = 0;
        scratch.b2[w as usize] = 0;
    }
    scratch.touched.clear();
    Ok(totals)
}

/// Bucketed counter: same wedge scan as [`bb_base`] but no per-pair checks.
pub fn bb_bucket(graph: &SignedBipartiteGraph) -> Result<CountReport, CountError> {
    let start = Instant::now();
    let order = graph.compute_priority();
    let mut scratch = BucketScratch::new(graph.vertex_count());

    let mut report = CountReport::default();
    for u in 0..graph.vertex_count() as u32 {
        let t = bucket_start_vertex(graph, &order, u, &mut scratch)?;
        add(&mut report.balanced, t.balanced)?;
        add(&mut report.unbalanced, t.unbalanced)?;
        report.wedges_processed += t.wedges;
    }
    report.total = report
        .balanced
        .checked_add(report.unbalanced)
        .ok_or(CountError::Overflow)?;
    report.wall_time = start.elapsed();
    Ok(report)
}

fn vbbfc_into(
    graph: &SignedBipartiteGraph,
    u: u32,
    scratch: &mut BucketScratch,
) -> Result<u128, CountError> {
    let mut count: u128 = 0;
    // No rank pruning here: every wedge out of u contributes, except the
    // degenerate 2-path that returns to u itself.
    for (v, s_uv) in graph.neighbors(u) {
        for (w, s_vw) in graph.neighbors(v) {
            if w == u {
                continue;
            }
            let wi = w as usize;
            if scratch.b1[wi] == 0 && scratch.b2[wi] == 0 {
                scratch.touched.push(w);
            }
            match classify_wedge(s_uv, s_vw) {
                WedgeClass::Symmetric => scratch.b1[wi] += 1,
                WedgeClass::Asymmetric => scratch.b2[wi] += 1,
            }
        }
    }
    for &w in &scratch.touched {
        let (l, m) = (scratch.b1[w as usize], scratch.b2[w as usize]);
        count = count
            .checked_add(pair_contribution(l, m))
            .ok_or(CountError::Overflow)?;
        scratch.b1[w as usize] = 0;
        scratch.b2[w as usize] = 0;
    }
    scratch.touched.clear();
    Ok(count)
}

/// Number of balanced butterflies containing `u`, each counted once.
pub fn vbbfc(graph: &SignedBipartiteGraph, u: VertexRef) -> Result<u128, CountError> {
    let gid = graph.global_id(u)?;
    let mut scratch = BucketScratch::new(graph.vertex_count());
    vbbfc_into(graph, gid, &mut scratch)
}

/// Per-vertex balanced counts for all vertices, indexed by global id.
pub fn per_vertex_counts(graph: &SignedBipartiteGraph) -> Result<Vec<u128>, CountError> {
    let n = graph.vertex_count();
    let mut scratch = BucketScratch::new(n);
    let mut counts = vec![0u128; n];
    for u in 0..n as u32 {
        counts[u as usize] = vbbfc_into(graph, u, &mut scratch)?;
    }
    Ok(counts)
}
