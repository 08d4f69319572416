//! Positive-edge metrics for case-study style reporting: per-vertex counts
//! of all-positive butterflies, pairwise collaboration scores, and top-k
//! rankings.

use std::collections::HashSet;

use thiserror::Error;

use crate::count::{per_vertex_counts, CountError};
use crate::graph::{GraphError, SignedBipartiteGraph, VertexRef};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("vertices must belong to the same partition")]
    SamePartitionRequired,
    #[error("vertices must be distinct")]
    IdenticalVertices,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// What a ranking scores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMetric {
    /// All-positive butterflies containing the vertex.
    PositiveButterflies,
    /// Number of positive incident edges.
    PositiveDegree,
}

/// Scores in descending order, ties broken by ascending global id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedList {
    pub metric: RankMetric,
    pub entries: Vec<(u32, u128)>,
}

/// The graph restricted to its positive edges; vertex sets unchanged.
pub fn positive_subgraph(graph: &SignedBipartiteGraph) -> SignedBipartiteGraph {
    let edges: Vec<_> = graph.edges().filter(|(_, _, s)| s.is_positive()).collect();
    SignedBipartiteGraph::from_edges(graph.left_count(), graph.right_count(), &edges)
        .expect("filtered edges remain valid")
}

/// All-positive butterflies per vertex, indexed by global id. Every
/// butterfly in the positive subgraph is balanced, so this is exactly the
/// per-vertex balanced count of that subgraph.
pub fn positive_butterflies_per_vertex(
    graph: &SignedBipartiteGraph,
) -> Result<Vec<u128>, CountError> {
    per_vertex_counts(&positive_subgraph(graph))
}

/// All-positive butterflies containing both `a` and `b`: `C(c, 2)` where `c`
/// counts their common positive neighbors.
pub fn pair_collaboration(
    graph: &SignedBipartiteGraph,
    a: VertexRef,
    b: VertexRef,
) -> Result<u128, AnalyticsError> {
    if a.partition != b.partition {
        return Err(AnalyticsError::SamePartitionRequired);
    }
    if a == b {
        return Err(AnalyticsError::IdenticalVertices);
    }
    let ga = graph.global_id(a)?;
    let gb = graph.global_id(b)?;

    let positives_a: HashSet<u32> = graph
        .neighbors(ga)
        .filter(|(_, s)| s.is_positive())
        .map(|(w, _)| w)
        .collect();
    let common = graph
        .neighbors(gb)
        .filter(|(w, s)| s.is_positive() && positives_a.contains(w))
        .count() as u128;
    Ok(common * common.saturating_sub(1) / 2)
}

fn positive_degree(graph: &SignedBipartiteGraph, v: u32) -> u128 {
    graph.neighbors(v).filter(|(_, s)| s.is_positive()).count() as u128
}

/// Top `k` vertices by the chosen metric over both partitions.
pub fn top_k(
    graph: &SignedBipartiteGraph,
    metric: RankMetric,
    k: usize,
) -> Result<RankedList, CountError> {
    let scores: Vec<u128> = match metric {
        RankMetric::PositiveButterflies => positive_butterflies_per_vertex(graph)?,
        RankMetric::PositiveDegree => (0..graph.vertex_count() as u32)
            .map(|v| positive_degree(graph, v))
            .collect(),
    };
    let mut entries: Vec<(u32, u128)> = scores
        .into_iter()
        .enumerate()
        .map(|(v, s)| (v as u32, s))
        .collect();
    entries.sort_by(|(va, sa), (vb, sb)| sb.cmp(sa).then(va.cmp(vb)));
    entries.truncate(k);
    Ok(RankedList { metric, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{bb_bucket, brute_force_count};
    use crate::graph::Sign::{Negative as N, Positive as P};
    use crate::ingest::{generate_random_bipartite, SyntheticSpec};

    fn k22_one_negative() -> SignedBipartiteGraph {
        SignedBipartiteGraph::from_edges(2, 2, &[(0, 0, N), (0, 1, P), (1, 0, P), (1, 1, P)])
            .unwrap()
    }

    #[test]
    fn positive_subgraph_drops_negatives() {
        let g = k22_one_negative();
        let pos = positive_subgraph(&g);
        assert_eq!(pos.edge_count(), 3);
        assert_eq!(pos.left_count(), 2);
        assert_eq!(bb_bucket(&pos).unwrap().total, 0);

        let all_neg = g.negate_all().negate_all().negate_all();
        assert_eq!(positive_subgraph(&all_neg).edge_count(), 1);
    }

    #[test]
    fn per_vertex_positive_counts() {
        let g = k22_one_negative();
        // One edge is negative, so no all-positive butterfly exists.
        assert!(positive_butterflies_per_vertex(&g)
            .unwrap()
            .iter()
            .all(|&c| c == 0));

        let all_pos =
            SignedBipartiteGraph::from_edges(2, 2, &[(0, 0, P), (0, 1, P), (1, 0, P), (1, 1, P)])
                .unwrap();
        assert_eq!(
            positive_butterflies_per_vertex(&all_pos).unwrap(),
            vec![1; 4]
        );
    }

    #[test]
    fn pair_collaboration_small_cases() {
        let all_pos =
            SignedBipartiteGraph::from_edges(2, 2, &[(0, 0, P), (0, 1, P), (1, 0, P), (1, 1, P)])
                .unwrap();
        // Two common positive neighbors -> one butterfly.
        assert_eq!(
            pair_collaboration(&all_pos, VertexRef::left(0), VertexRef::left(1)).unwrap(),
            1
        );

        let g = k22_one_negative();
        assert_eq!(
            pair_collaboration(&g, VertexRef::left(0), VertexRef::left(1)).unwrap(),
            0
        );
    }

    #[test]
    fn pair_collaboration_rejects_bad_pairs() {
        let g = k22_one_negative();
        assert_eq!(
            pair_collaboration(&g, VertexRef::left(0), VertexRef::right(0)).unwrap_err(),
            AnalyticsError::SamePartitionRequired
        );
        assert_eq!(
            pair_collaboration(&g, VertexRef::left(0), VertexRef::left(0)).unwrap_err(),
            AnalyticsError::IdenticalVertices
        );
        assert!(matches!(
            pair_collaboration(&g, VertexRef::left(0), VertexRef::left(9)),
            Err(AnalyticsError::Graph(GraphError::UnknownVertex(_)))
        ));
    }

    #[test]
    fn pair_collaboration_matches_membership_oracle() {
        let g = generate_random_bipartite(&SyntheticSpec {
            left_count: 8,
            right_count: 9,
            edge_probability: 0.5,
            positive_probability: 0.6,
            seed: 21,
        });
        let pos = positive_subgraph(&g);
        // Sum over all left pairs covers every butterfly exactly once.
        let mut sum = 0u128;
        for a in 0..8 {
            for b in a + 1..8 {
                sum += pair_collaboration(&g, VertexRef::left(a), VertexRef::left(b)).unwrap();
            }
        }
        assert_eq!(sum, brute_force_count(&pos).unwrap().total);
    }

    #[test]
    fn top_k_degree_ranking() {
        let all_pos =
            SignedBipartiteGraph::from_edges(2, 2, &[(0, 0, P), (0, 1, P), (1, 0, P), (1, 1, P)])
                .unwrap();
        let ranked = top_k(&all_pos, RankMetric::PositiveDegree, 2).unwrap();
        assert_eq!(ranked.entries, vec![(0, 2), (1, 2)]);

        let full = top_k(&all_pos, RankMetric::PositiveDegree, 10).unwrap();
        assert_eq!(full.entries.len(), 4);
    }

    #[test]
    fn top_k_butterfly_ranking_uses_positive_subgraph() {
        let g = generate_random_bipartite(&SyntheticSpec {
            left_count: 6,
            right_count: 8,
            edge_probability: 0.6,
            positive_probability: 0.7,
            seed: 4,
        });
        let ranked = top_k(&g, RankMetric::PositiveButterflies, 5).unwrap();
        let expected = positive_butterflies_per_vertex(&g).unwrap();
        for (v, score) in &ranked.entries {
            assert_eq!(*score, expected[*v as usize]);
        }
        // Scores are non-increasing and ties ordered by id.
        for pair in ranked.entries.windows(2) {
            assert!(pair[0].1 > pair[1].1 || (pair[0].1 == pair[1].1 && pair[0].0 < pair[1].0));
        }
    }
}
