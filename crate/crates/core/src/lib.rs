//! Uniform random temporal graphs: journey semantics, foremost-journey
//! distances, closed forms for expected temporal-path counts and temporal
//! distances, seeded Monte Carlo and exhaustive estimators, the extend-try
//! greedy journey search on normalized cliques, and the bridges min-max
//! assignment problem.
//!
//! All types are immutable after construction and every operation is pure,
//! so everything can be used from concurrent workers without coordination.
//! Estimators parallelize internally (rayon) and reproduce the same result
//! bit-for-bit regardless of worker count.

pub mod bridges;
pub mod error;
pub mod estimators;
pub mod extend_try;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{DistanceReport, Journey, Label, TemporalGraph, TimeEdge, Vertex};

/// Seed used by the CLI when neither `--seed` nor `TEMPOGRAPH_SEED` is
/// given ("tempo" in ASCII), so default invocations reproduce.
pub const DEFAULT_SEED: u64 = 0x74656d706f;
