//! Shared fixtures: the randomized cross-algorithm corpus and an
//! enumeration-based per-vertex oracle kept independent of the library's
//! wedge-scanning code paths.
//!
//! Not every test binary uses every helper.
#![allow(dead_code)]

use butterfly_core::graph::{Sign, SignedBipartiteGraph};
use butterfly_core::ingest::{generate_random_bipartite, SyntheticSpec};

pub const EDGE_PROBS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const POSITIVE_PROBS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const SEEDS_PER_CELL: u64 = 23;

/// 1035 graphs (9 edge probabilities x 5 sign probabilities x 23 seeds) with
/// both side sizes in 2..=12, deterministically derived from the cell.
pub fn corpus() -> Vec<SignedBipartiteGraph> {
    let mut graphs = Vec::new();
    for (ei, &edge_probability) in EDGE_PROBS.iter().enumerate() {
        for (pi, &positive_probability) in POSITIVE_PROBS.iter().enumerate() {
            for rep in 0..SEEDS_PER_CELL {
                let seed = (ei as u64) * 1_000 + (pi as u64) * 100 + rep;
                let left_count = 2 + ((seed * 7 + 3) % 11) as usize;
                let right_count = 2 + ((seed * 13 + 5) % 11) as usize;
                graphs.push(generate_random_bipartite(&SyntheticSpec {
                    left_count,
                    right_count,
                    edge_probability,
                    positive_probability,
                    seed,
                }));
            }
        }
    }
    graphs
}

fn sign_matrix(graph: &SignedBipartiteGraph) -> Vec<Option<Sign>> {
    let rc = graph.right_count();
    let mut m = vec![None; graph.left_count() * rc];
    for (l, r, s) in graph.edges() {
        m[l as usize * rc + r as usize] = Some(s);
    }
    m
}

fn even_negatives(signs: [Sign; 4]) -> bool {
    signs.iter().filter(|s| **s == Sign::Negative).count() % 2 == 0
}

/// Balanced butterflies containing each vertex, found by checking every
/// (left pair, right pair) quadruple against the adjacency matrix.
pub fn per_vertex_membership_oracle(graph: &SignedBipartiteGraph) -> Vec<u128> {
    let (lc, rc) = (graph.left_count(), graph.right_count());
    let m = sign_matrix(graph);
    let mut counts = vec![0u128; lc + rc];
    for ui in 0..lc {
        for uj in ui + 1..lc {
            for vi in 0..rc {
                for vj in vi + 1..rc {
                    if let (Some(a), Some(b), Some(c), Some(d)) = (
                        m[ui * rc + vi],
                        m[ui * rc + vj],
                        m[uj * rc + vi],
                        m[uj * rc + vj],
                    ) {
                        if even_negatives([a, b, c, d]) {
                            counts[ui] += 1;
                            counts[uj] += 1;
                            counts[lc + vi] += 1;
                            counts[lc + vj] += 1;
                        }
                    }
                }
            }
        }
    }
    counts
}

/// Total butterflies (balanced or not) by the same quadruple enumeration.
pub fn total_butterflies_oracle(graph: &SignedBipartiteGraph) -> u128 {
    let (lc, rc) = (graph.left_count(), graph.right_count());
    let m = sign_matrix(graph);
    let mut total = 0u128;
    for ui in 0..lc {
        for uj in ui + 1..lc {
            for vi in 0..rc {
                for vj in vi + 1..rc {
                    if m[ui * rc + vi].is_some()
                        && m[ui * rc + vj].is_some()
                        && m[uj * rc + vi].is_some()
                        && m[uj * rc + vj].is_some()
                    {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

/// Median of a sample, used for the timing-based checks.
pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN timings"));
    xs[xs.len() / 2]
}
