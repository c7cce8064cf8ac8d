//! Seeded random label assignment over a fixed underlying graph.
//!
//! The uniform model assigns every edge exactly one label drawn uniformly
//! and independently from `{1..=a}`; a discrete-distribution hook covers
//! non-uniform single-label models.
//!
//! Determinism contract: the label of an edge is a pure function of
//! `(seed, sample_index, u, v)` — each edge gets its own ChaCha8 stream
//! keyed by the SplitMix64-mixed words of that tuple. Consequences:
//! identical specs yield bit-identical labelings, the labeling does not
//! depend on edge enumeration order, distinct sample indices yield
//! independent streams that parallelize without coordination, and labels
//! can be generated lazily (used by the extend-try experiment, which never
//! materializes whole clique labelings). The derivation is fixed; changing
//! it would invalidate golden outputs.

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Label, TemporalGraph, Vertex};

/// Single-label distribution over `{1..=a}`.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelDistribution {
    /// Every label in `{1..=max_label}` with probability `1/max_label`.
    Uniform { max_label: Label },
    /// `weights[i]` is the probability of label `i + 1`; weights must be
    /// nonnegative and sum to 1 within 1e-12.
    Discrete { weights: Vec<f64> },
}

impl LabelDistribution {
    pub fn uniform(max_label: Label) -> Self {
        LabelDistribution::Uniform { max_label }
    }

    pub fn max_label(&self) -> Label {
        match self {
            LabelDistribution::Uniform { max_label } => *max_label,
            LabelDistribution::Discrete { weights } => weights.len() as Label,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LabelDistribution::Uniform { max_label } => {
                if *max_label == 0 {
                    return Err(Error::invalid_input("uniform distribution needs a >= 1"));
                }
            }
            LabelDistribution::Discrete { weights } => {
                if weights.is_empty() {
                    return Err(Error::invalid_input("discrete distribution needs weights"));
                }
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::invalid_input("weights must be nonnegative"));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::invalid_input(format!(
                        "weights sum to {total}, expected 1 within 1e-12"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Unlabeled undirected graph: the structure labels get sampled onto.
/// Edges are normalized to `u < v`, deduplicated, and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraph {
    pub num_vertices: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl BaseGraph {
    pub fn new(num_vertices: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::invalid_input("graph needs at least one vertex"));
        }
        let mut normalized: Vec<(Vertex, Vertex)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid_input(format!("self-loop on vertex {u}")));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidVertex {
                    vertex: u.max(v),
                    num_vertices,
                });
            }
            normalized.push(if u < v { (u, v) } else { (v, u) });
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(BaseGraph {
            num_vertices,
            edges: normalized,
        })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

/// Complete graph on `n` vertices.
pub fn make_clique(n: usize) -> BaseGraph {
    assert!(n >= 1, "make_clique: n >= 1");
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    BaseGraph {
        num_vertices: n,
        edges,
    }
}

/// Star with the center at vertex 0 and `leaves` leaves.
pub fn make_star(leaves: usize) -> BaseGraph {
    assert!(leaves >= 1, "make_star: leaves >= 1");
    BaseGraph {
        num_vertices: leaves + 1,
        edges: (1..=leaves).map(|v| (0, v)).collect(),
    }
}

/// Path of `length` edges with vertices in line order `0 - 1 - ... - length`.
pub fn make_path(length: usize) -> BaseGraph {
    assert!(length >= 1, "make_path: length >= 1");
    BaseGraph {
        num_vertices: length + 1,
        edges: (0..length).map(|u| (u, u + 1)).collect(),
    }
}

/// Everything needed to reproduce one sampled labeling bit-exactly.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub base_graph: BaseGraph,
    pub distribution: LabelDistribution,
    /// Slow-journey arrival time of the resulting graph; does not enter
    /// label generation.
    pub slow_arrival: f64,
    pub seed: u64,
    pub sample_index: u64,
}

impl SampleSpec {
    pub fn uniform(base_graph: BaseGraph, max_label: Label, slow_arrival: f64, seed: u64) -> Self {
        SampleSpec {
            base_graph,
            distribution: LabelDistribution::uniform(max_label),
            slow_arrival,
            seed,
            sample_index: 0,
        }
    }

    pub fn with_sample_index(mut self, sample_index: u64) -> Self {
        self.sample_index = sample_index;
        self
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Per-edge generator: ChaCha8 keyed by the mixed words of
/// `(seed, sample_index, min(u,v), max(u,v))`.
pub(crate) fn edge_rng(seed: u64, sample_index: u64, u: Vertex, v: Vertex) -> ChaCha8Rng {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let words = [
        splitmix64(seed ^ 0x7467_7201),
        splitmix64(sample_index ^ 0x7467_7202),
        splitmix64(u as u64 ^ 0x7467_7203),
        splitmix64(v as u64 ^ 0x7467_7204),
    ];
    let mut key = [0u8; 32];
    for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform label for one edge under the fixed derivation; this is the
/// single function behind every uniform labeling the crate draws.
pub fn uniform_edge_label(
    seed: u64,
    sample_index: u64,
    u: Vertex,
    v: Vertex,
    max_label: Label,
) -> Label {
    edge_rng(seed, sample_index, u, v).random_range(1..=max_label)
}

/// Draws one labeling of `spec.base_graph` and returns it as a temporal
/// graph with `max_label` taken from the distribution and `slow_arrival`
/// from the spec.
pub fn sample_labeling(spec: &SampleSpec) -> Result<TemporalGraph> {
    spec.distribution.validate()?;
    let a = spec.distribution.max_label();
    let weighted = match &spec.distribution {
        LabelDistribution::Uniform { .. } => None,
        LabelDistribution::Discrete { weights } => Some(
            WeightedIndex::new(weights.iter().copied())
                .map_err(|e| Error::invalid_input(format!("discrete weights: {e}")))?,
        ),
    };
    let edges = spec
        .base_graph
        .edges
        .iter()
        .map(|&(u, v)| {
            let label = match &weighted {
                None => uniform_edge_label(spec.seed, spec.sample_index, u, v, a),
                Some(w) => {
                    let mut rng = edge_rng(spec.seed, spec.sample_index, u, v);
                    w.sample(&mut rng) as Label + 1
                }
            };
            (u, v, vec![label])
        })
        .collect();
    TemporalGraph::new(spec.base_graph.num_vertices, edges, a, spec.slow_arrival)
}
