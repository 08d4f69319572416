//! Signed bipartite graph representation.
//!
//! Vertices live in two partitions. Left vertices get global ids
//! `0..left_count`, right vertices `left_count..left_count + right_count`.
//! Adjacency is stored in compressed form (offset array plus parallel
//! neighbor/sign arrays) and each neighbor list is sorted ascending by
//! priority rank, so priority-pruned scans can stop at the first
//! too-high-rank neighbor.

use thiserror::Error;

/// Edge label. The product of two signs is positive iff they are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// Positive iff both operands carry the same sign.
    pub fn product(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

/// Which side of the bipartition a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Partition {
    Left,
    Right,
}

/// A vertex named by partition and position within that partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexRef {
    pub partition: Partition,
    pub index: u32,
}

impl VertexRef {
    pub fn left(index: u32) -> Self {
        VertexRef {
            partition: Partition::Left,
            index,
        }
    }

    pub fn right(index: u32) -> Self {
        VertexRef {
            partition: Partition::Right,
            index,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate edge between left {left} and right {right}")]
    DuplicateEdge { left: u32, right: u32 },
    #[error("vertex index {index} out of range for {partition:?} partition of size {size}")]
    IndexOutOfRange {
        partition: Partition,
        index: u32,
        size: usize,
    },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(VertexRef),
    #[error("graph too large: {0} vertices exceed the u32 id space")]
    TooManyVertices(usize),
}

/// Strict total order on all vertices: higher degree wins, ties go to the
/// larger global id.
#[derive(Clone, Debug)]
pub struct PriorityOrder {
    rank: Vec<u32>,
    by_rank: Vec<u32>,
}

impl PriorityOrder {
    pub(crate) fn from_degrees(degrees: &[u32]) -> Self {
        let mut by_rank: Vec<u32> = (0..degrees.len() as u32).collect();
        // (degree, id) ascending; ids are unique so the order is strict.
        by_rank.sort_unstable_by_key(|&v| (degrees[v as usize], v));
        let mut rank = vec![0u32; degrees.len()];
        for (pos, &v) in by_rank.iter().enumerate() {
            rank[v as usize] = pos as u32;
        }
        PriorityOrder { rank, by_rank }
    }

    #[inline]
    pub fn rank(&self, global_id: u32) -> u32 {
        self.rank[global_id as usize]
    }

    /// Global ids sorted ascending by rank (lowest priority first).
    pub fn vertices_by_rank(&self) -> &[u32] {
        &self.by_rank
    }
}

/// Immutable signed bipartite graph.
#[derive(Clone, Debug)]
pub struct SignedBipartiteGraph {
    left_count: usize,
    right_count: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    signs: Vec<Sign>,
    edge_count: usize,
}

impl SignedBipartiteGraph {
    /// Builds a graph from `(left_index, right_index, sign)` triples.
    ///
    /// The edge list may arrive in any order. Neighbor lists end up sorted
    /// ascending by priority rank. A repeated `(left, right)` pair is an
    /// error regardless of the signs involved.
    pub fn from_edges(
        left_count: usize,
        right_count: usize,
        edges: &[(u32, u32, Sign)],
    ) -> Result<Self, GraphError> {
        let n = left_count + right_count;
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }

        let mut degrees = vec![0u32; n];
        for &(l, r, _) in edges {
            if (l as usize) >= left_count {
                return Err(GraphError::IndexOutOfRange {
                    partition: Partition::Left,
                    index: l,
                    size: left_count,
                });
            }
            if (r as usize) >= right_count {
                return Err(GraphError::IndexOutOfRange {
                    partition: Partition::Right,
                    index: r,
                    size: right_count,
                });
            }
            degrees[l as usize] += 1;
            degrees[left_count + r as usize] += 1;
        }

        let order = PriorityOrder::from_degrees(&degrees);

        let mut offsets = vec![0usize; n + 1];
        for (v, &d) in degrees.iter().enumerate() {
            offsets[v + 1] = offsets[v] + d as usize;
        }

        let mut neighbors = vec![0u32; 2 * edges.len()];
        let mut signs = vec![Sign::Positive; 2 * edges.len()];
        let mut cursor = offsets.clone();
        for &(l, r, s) in edges {
            let lg = l;
            let rg = (left_count + r as usize) as u32;
            neighbors[cursor[lg as usize]] = rg;
            signs[cursor[lg as usize]] = s;
            cursor[lg as usize] += 1;
            neighbors[cursor[rg as usize]] = lg;
            signs[cursor[rg as usize]] = s;
            cursor[rg as usize] += 1;
        }

        // Sort each neighbor list by rank and co-sort the signs.
        let mut scratch: Vec<(u32, Sign)> = Vec::new();
        for v in 0..n {
            let span = offsets[v]..offsets[v + 1];
            scratch.clear();
            scratch.extend(
                neighbors[span.clone()]
                    .iter()
                    .copied()
                    .zip(signs[span.clone()].iter().copied()),
            );
            scratch.sort_unstable_by_key(|&(nbr, _)| order.rank(nbr));
            for (i, &(nbr, s)) in scratch.iter().enumerate() {
                neighbors[offsets[v] + i] = nbr;
                signs[offsets[v] + i] = s;
            }
        }

        // Equal-rank neighbors are equal ids, so duplicates are adjacent now.
        for l in 0..left_count {
            let span = &neighbors[offsets[l]..offsets[l + 1]];
            for pair in span.windows(2) {
                if pair[0] == pair[1] {
                    return Err(GraphError::DuplicateEdge {
                        left: l as u32,
                        right: pair[0] - left_count as u32,
                    });
                }
            }
        }

        Ok(SignedBipartiteGraph {
            left_count,
            right_count,
            offsets,
            neighbors,
            signs,
            edge_count: edges.len(),
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    /// Total vertices across both partitions.
    pub fn vertex_count(&self) -> usize {
        self.left_count + self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, global_id: u32) -> u32 {
        (self.offsets[global_id as usize + 1] - self.offsets[global_id as usize]) as u32
    }

    /// Neighbor global ids and edge signs, ascending by priority rank.
    #[inline]
    pub fn neighbors(&self, global_id: u32) -> impl Iterator<Item = (u32, Sign)> + '_ {
        let span = self.offsets[global_id as usize]..self.offsets[global_id as usize + 1];
        self.neighbors[span.clone()]
            .iter()
            .copied()
            .zip(self.signs[span].iter().copied())
    }

    #[inline]
    pub fn is_left(&self, global_id: u32) -> bool {
        (global_id as usize) < self.left_count
    }

    pub fn partition_of(&self, global_id: u32) -> Partition {
        if self.is_left(global_id) {
            Partition::Left
        } else {
            Partition::Right
        }
    }

    /// Resolves a `VertexRef` to its global id.
    pub fn global_id(&self, v: VertexRef) -> Result<u32, GraphError> {
        let size = match v.partition {
            Partition::Left => self.left_count,
            Partition::Right => self.right_count,
        };
        if (v.index as usize) >= size {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(match v.partition {
            Partition::Left => v.index,
            Partition::Right => self.left_count as u32 + v.index,
        })
    }

    pub fn vertex_ref(&self, global_id: u32) -> VertexRef {
        if self.is_left(global_id) {
            VertexRef::left(global_id)
        } else {
            VertexRef::right(global_id - self.left_count as u32)
        }
    }

    /// All edges as `(left_index, right_index, sign)`, each exactly once.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, Sign)> + '_ {
        (0..self.left_count as u32).flat_map(move |l| {
            self.neighbors(l)
                .map(move |(rg, s)| (l, rg - self.left_count as u32, s))
        })
    }

    /// Degree-then-id priority order over all vertices.
    pub fn compute_priority(&self) -> PriorityOrder {
        let n = self.vertex_count();
        let mut degrees = vec![0u32; n];
        for (v, d) in degrees.iter_mut().enumerate() {
            *d = self.degree(v as u32);
        }
        PriorityOrder::from_degrees(&degrees)
    }

    /// New graph with every edge incident to `v` sign-flipped.
    pub fn switch_vertex(&self, v: VertexRef) -> Result<Self, GraphError> {
        let target = self.global_id(v)?;
        let edges: Vec<(u32, u32, Sign)> = self
            .edges()
            .map(|(l, r, s)| {
                let rg = self.left_count as u32 + r;
                if l == target || rg == target {
                    (l, r, s.flipped())
                } else {
                    (l, r, s)
                }
            })
            .collect();
        Self::from_edges(self.left_count, self.right_count, &edges)
    }

    /// New graph with every edge sign flipped.
    pub fn negate_all(&self) -> Self {
        let edges: Vec<(u32, u32, Sign)> =
            self.edges().map(|(l, r, s)| (l, r, s.flipped())).collect();
        Self::from_edges(self.left_count, self.right_count, &edges)
            .expect("negation preserves structure")
    }
}
