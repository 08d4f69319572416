//! Edge-list parsing, sign assignment, and synthetic graph generation.
//!
//! Three line-oriented formats are understood. Lines starting with `%` or
//! `#` are comments, blank lines are skipped, and fields are
//! whitespace-separated:
//!
//! * signed TSV: `<left> <right> <sign>` with sign tokens `1`, `+1`, `+`
//!   (positive) and `0`, `-1`, `-` (negative);
//! * unsigned TSV: `<left> <right>`, to be signed later;
//! * weighted (Konect-style): `<left> <right> <weight> [timestamp]`, where
//!   weight > 0 maps to positive and weight <= 0 to negative.
//!
//! External ids are arbitrary tokens and are remapped densely per partition
//! in first-appearance order. All randomness (sign assignment, synthetic
//! generation, and the sampling in [`crate::approx`]) runs on ChaCha8 seeded
//! from the caller's 64-bit seed, with a fixed visit order (file order for
//! edge lists, row-major for generated cells), so identical seeds give
//! identical graphs everywhere.

use std::collections::HashMap;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GraphError, Sign, SignedBipartiteGraph};

/// Supported edge-list flavors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeListFormat {
    SignedTsv,
    UnsignedTsv,
    KonectWeighted,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("malformed line {line}")]
    MalformedLine { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("no edges in input")]
    EmptyInput,
    #[error("edge at line {line} has no sign; assign signs before building")]
    MissingSign { line: usize },
    #[error("edge at line {line} has no weight; threshold signing needs a weighted format")]
    MissingWeight { line: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug)]
struct EdgeRow {
    left: u32,
    right: u32,
    sign: Option<Sign>,
    weight: Option<f64>,
    line: usize,
}

/// Parsed edge list with dense per-partition ids and the original tokens.
#[derive(Clone, Debug)]
pub struct EdgeList {
    left_ids: Vec<String>,
    right_ids: Vec<String>,
    rows: Vec<EdgeRow>,
}

fn parse_sign_token(token: &str) -> Option<Sign> {
    match token {
        "1" | "+1" | "+" => Some(Sign::Positive),
        "0" | "-1" | "-" => Some(Sign::Negative),
        _ => None,
    }
}

/// Parses `text` as one of the supported formats.
pub fn parse_edge_list(text: &str, format: EdgeListFormat) -> Result<EdgeList, ParseError> {
    let mut left_map: HashMap<&str, u32> = HashMap::new();
    let mut right_map: HashMap<&str, u32> = HashMap::new();
    let mut left_ids: Vec<String> = Vec::new();
    let mut right_ids: Vec<String> = Vec::new();
    let mut rows: Vec<EdgeRow> = Vec::new();
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let malformed = ParseError::MalformedLine { line };

        let (left_tok, right_tok, sign, weight) = match format {
            EdgeListFormat::SignedTsv => {
                if fields.len() != 3 {
                    return Err(malformed);
                }
                let sign = parse_sign_token(fields[2]).ok_or(malformed)?;
                (fields[0], fields[1], Some(sign), None)
            }
            EdgeListFormat::UnsignedTsv => {
                if fields.len() != 2 {
                    return Err(malformed);
                }
                (fields[0], fields[1], None, None)
            }
            EdgeListFormat::KonectWeighted => {
                if fields.len() != 3 && fields.len() != 4 {
                    return Err(malformed);
                }
                let weight: f64 = fields[2].parse().map_err(|_| malformed)?;
                let sign = if weight > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                (fields[0], fields[1], Some(sign), Some(weight))
            }
        };

        let left = *left_map.entry(left_tok).or_insert_with(|| {
            left_ids.push(left_tok.to_string());
            (left_ids.len() - 1) as u32
        });
        let right = *right_map.entry(right_tok).or_insert_with(|| {
            right_ids.push(right_tok.to_string());
            (right_ids.len() - 1) as u32
        });
        if seen.insert((left, right), line).is_some() {
            return Err(ParseError::DuplicateEdge { line });
        }
        rows.push(EdgeRow {
            left,
            right,
            sign,
            weight,
            line,
        });
    }

    if rows.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    Ok(EdgeList {
        left_ids,
        right_ids,
        rows,
    })
}

impl EdgeList {
    pub fn left_count(&self) -> usize {
        self.left_ids.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.len()
    }

    /// Original token for a dense left index.
    pub fn left_label(&self, index: u32) -> &str {
        &self.left_ids[index as usize]
    }

    pub fn right_label(&self, index: u32) -> &str {
        &self.right_ids[index as usize]
    }

    /// Builds the graph; every row must already carry a sign.
    pub fn to_graph(&self) -> Result<SignedBipartiteGraph, ParseError> {
        let mut edges = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let sign = row.sign.ok_or(ParseError::MissingSign { line: row.line })?;
            edges.push((row.left, row.right, sign));
        }
        Ok(SignedBipartiteGraph::from_edges(
            self.left_count(),
            self.right_count(),
            &edges,
        )?)
    }

    /// Fresh signs drawn independently per edge in file order: positive with
    /// probability `positive_probability`.
    pub fn with_random_signs(&self, positive_probability: f64, seed: u64) -> EdgeList {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.clone();
        for row in &mut out.rows {
            row.sign = Some(if rng.random_bool(positive_probability) {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        out
    }

    /// Signs from weights: weight >= `threshold` becomes positive.
    pub fn with_threshold_signs(&self, threshold: f64) -> Result<EdgeList, ParseError> {
        let mut out = self.clone();
        for row in &mut out.rows {
            let w = row
                .weight
                .ok_or(ParseError::MissingWeight { line: row.line })?;
            row.sign = Some(if w >= threshold {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        Ok(out)
    }

    /// Signed TSV with `+1`/`-1` tokens and original ids, in row order.
    pub fn write_signed_tsv(&self, w: &mut impl Write) -> Result<(), WriteError> {
        for row in &self.rows {
            let sign = row.sign.ok_or(ParseError::MissingSign { line: row.line })?;
            writeln!(
                w,
                "{}\t{}\t{}",
                self.left_ids[row.left as usize],
                self.right_ids[row.right as usize],
                if sign.is_positive() { "+1" } else { "-1" }
            )?;
        }
        Ok(())
    }

    /// Emits `global_id<TAB>partition<TAB>original_id` for every vertex.
    pub fn write_id_map(&self, w: &mut impl Write) -> io::Result<()> {
        for (i, tok) in self.left_ids.iter().enumerate() {
            writeln!(w, "{i}\tleft\t{tok}")?;
        }
        for (i, tok) in self.right_ids.iter().enumerate() {
            writeln!(w, "{}\tright\t{tok}", self.left_ids.len() + i)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum WriteError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Random signs, then the graph. See [`EdgeList::with_random_signs`].
pub fn assign_random_signs(
    edges: &EdgeList,
    positive_probability: f64,
    seed: u64,
) -> Result<SignedBipartiteGraph, ParseError> {
    edges
        .with_random_signs(positive_probability, seed)
        .to_graph()
}

/// Parameters for [`generate_random_bipartite`]. The same spec always yields
/// the same graph.
#[derive(Clone, Copy, Debug)]
pub struct SyntheticSpec {
    pub left_count: usize,
    pub right_count: usize,
    pub edge_probability: f64,
    pub positive_probability: f64,
    pub seed: u64,
}

/// Erdos-Renyi-style signed bipartite graph: each of the
/// `left_count * right_count` cells is an edge independently with
/// `edge_probability`, and present edges are positive with
/// `positive_probability`.
///
/// Cells are visited row-major (left outer, right inner) on a ChaCha8 stream
/// seeded from `spec.seed`; present edges draw one extra sign decision, so
/// the output is fully determined by the spec.
pub fn generate_random_bipartite(spec: &SyntheticSpec) -> SignedBipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges = Vec::new();
    for l in 0..spec.left_count as u32 {
        for r in 0..spec.right_count as u32 {
            if rng.random_bool(spec.edge_probability) {
                let sign = if rng.random_bool(spec.positive_probability) {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                edges.push((l, r, sign));
            }
        }
    }
    SignedBipartiteGraph::from_edges(spec.left_count, spec.right_count, &edges)
        .expect("generated edges are unique and in range")
}

/// Few wide left rows against many right vertices. Dense rows make large
/// common neighborhoods, the regime where bucketed counting pays off most.
pub fn generate_skewed_bipartite(
    few_left: usize,
    many_right: usize,
    density: f64,
    positive_probability: f64,
    seed: u64,
) -> SignedBipartiteGraph {
    generate_random_bipartite(&SyntheticSpec {
        left_count: few_left,
        right_count: many_right,
        edge_probability: density,
        positive_probability,
        seed,
    })
}
