//! One-shot sparsification estimator.
//!
//! Keep each edge independently with probability `rho`, count balanced
//! butterflies on the sample, and scale by `rho^-4`: a butterfly survives
//! exactly when all four of its edges do, so the scaled count is an unbiased
//! estimate of the original.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::count::{bb_bucket, CountError};
use crate::graph::{Sign, SignedBipartiteGraph};

#[derive(Debug, Error, PartialEq)]
pub enum ApproxError {
    #[error("rho must be in (0, 1], got {0}")]
    InvalidRho(f64),
    #[error("at least one trial is required")]
    InvalidTrials,
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Per-trial estimates plus summary statistics.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub rho: f64,
    pub trials: usize,
    pub estimates: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); zero for one trial.
    pub sample_stddev: f64,
    pub seed: u64,
}

fn sparsify_with(
    graph: &SignedBipartiteGraph,
    rho: f64,
    rng: &mut ChaCha8Rng,
) -> SignedBipartiteGraph {
    // Edges visited in storage order (left index ascending, then adjacency
    // order), so the sample is determined by the rng state.
    let kept: Vec<(u32, u32, Sign)> = graph.edges().filter(|_| rng.random_bool(rho)).collect();
    SignedBipartiteGraph::from_edges(graph.left_count(), graph.right_count(), &kept)
        .expect("sampled edges are a subset of a valid graph")
}

fn check_rho(rho: f64) -> Result<(), ApproxError> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(ApproxError::InvalidRho(rho));
    }
    Ok(())
}

/// Independent edge sample with retention probability `rho`; vertex sets are
/// unchanged. Equals trial 0 of [`estimate_balanced`] for the same seed.
pub fn sparsify(
    graph: &SignedBipartiteGraph,
    rho: f64,
    seed: u64,
) -> Result<SignedBipartiteGraph, ApproxError> {
    check_rho(rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sparsify_with(graph, rho, &mut rng))
}

/// Runs `trials` independent sparsification rounds and scales each balanced
/// count by `rho^-4`. Trial `t` uses ChaCha8 stream `t` of `seed`, so trials
/// are independent yet reproducible.
pub fn estimate_balanced(
    graph: &SignedBipartiteGraph,
    rho: f64,
    trials: usize,
    seed: u64,
) -> Result<EstimateReport, ApproxError> {
    check_rho(rho)?;
    if trials == 0 {
        return Err(ApproxError::InvalidTrials);
    }

    let scale = rho.powi(-4);
    let mut estimates = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let sample = sparsify_with(graph, rho, &mut rng);
        let balanced = bb_bucket(&sample)?.balanced;
        estimates.push(balanced as f64 * scale);
    }

    let mean = estimates.iter().sum::<f64>() / trials as f64;
    let sample_stddev = if trials > 1 {
        let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };

    Ok(EstimateReport {
        rho,
        trials,
        estimates,
        mean,
        sample_stddev,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{generate_random_bipartite, SyntheticSpec};

    fn fixture() -> SignedBipartiteGraph {
        generate_random_bipartite(&SyntheticSpec {
            left_count: 20,
            right_count: 20,
            edge_probability: 0.5,
            positive_probability: 0.5,
            seed: 3,
        })
    }

    #[test]
    fn rho_one_keeps_everything() {
        let g = fixture();
        let s = sparsify(&g, 1.0, 99).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), s.edges().collect::<Vec<_>>());
    }

    #[test]
    fn invalid_rho_rejected() {
        let g = fixture();
        for rho in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                sparsify(&g, rho, 0),
                Err(ApproxError::InvalidRho(_))
            ));
        }
        assert!(matches!(
            estimate_balanced(&g, 2.0, 4, 0),
            Err(ApproxError::InvalidRho(_))
        ));
    }

    #[test]
    fn zero_trials_rejected() {
        let g = fixture();
        assert_eq!(
            estimate_balanced(&g, 0.5, 0, 0).unwrap_err(),
            ApproxError::InvalidTrials
        );
    }

    #[test]
    fn retention_fraction_concentrates() {
        let mut edges = Vec::new();
        for l in 0..100u32 {
            for r in 0..100u32 {
                edges.push((l, r, Sign::Positive));
            }
        }
        let g = SignedBipartiteGraph::from_edges(100, 100, &edges).unwrap();
        let s = sparsify(&g, 0.5, 7).unwrap();
        let fraction = s.edge_count() as f64 / g.edge_count() as f64;
        assert!((0.45..=0.55).contains(&fraction), "fraction = {fraction}");
    }

    #[test]
    fn sparsify_is_deterministic() {
        let g = fixture();
        let a = sparsify(&g, 0.3, 5).unwrap();
        let b = sparsify(&g, 0.3, 5).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
    }

    #[test]
    fn rho_one_estimates_are_exact() {
        let g = fixture();
        let exact = bb_bucket(&g).unwrap().balanced as f64;
        let report = estimate_balanced(&g, 1.0, 3, 42).unwrap();
        assert_eq!(report.estimates.len(), 3);
        for e in &report.estimates {
            assert_eq!(*e, exact);
        }
        assert_eq!(report.mean, exact);
        assert_eq!(report.sample_stddev, 0.0);
    }

    #[test]
    fn empty_graph_estimates_zero() {
        let g = SignedBipartiteGraph::from_edges(4, 4, &[]).unwrap();
        let report = estimate_balanced(&g, 0.5, 5, 1).unwrap();
        assert!(report.estimates.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn variance_shrinks_with_rho() {
        let g = fixture();
        let low = estimate_balanced(&g, 0.3, 60, 11).unwrap();
        let high = estimate_balanced(&g, 0.7, 60, 11).unwrap();
        assert!(low.sample_stddev >= high.sample_stddev);
    }
}
