//! Counting balanced butterflies in signed bipartite graphs.
//!
//! A butterfly is a 4-cycle spanning two left and two right vertices; it is
//! balanced when an even number of its four edges are negative. This crate
//! provides the graph representation ([`graph`]), edge-list parsing and
//! synthetic generators ([`ingest`]), exact sequential counters and a
//! brute-force oracle ([`count`]), a parallel counter ([`par`]), a
//! sparsification estimator ([`approx`]), and positive-edge analytics
//! ([`analytics`]).

pub mod analytics;
pub mod approx;
pub mod count;
pub mod graph;
pub mod ingest;
pub mod par;

pub use count::{bb_base, bb_bucket, brute_force_count, vbbfc, CountReport};
pub use graph::{Partition, Sign, SignedBipartiteGraph, VertexRef};
