//! The extend-try greedy journey search on normalized uniform random
//! temporal cliques (`a = n`), and a seeded experiment harness comparing its
//! empirical success rate to the analytical lower bound
//! `(1 - n^-c1)(1 - e n^-r)`.
//!
//! At step `i` the walk sits on `s_i` (with `s_0 = s`). If the direct edge
//! `{s_i, t}` has its label in the open success window `(t0 - sqrt(n), t0)`,
//! the walk follows it and succeeds. Otherwise it extends to an unvisited
//! vertex `u != t` whose edge label lies in the open window `(k i, k (i+1))`
//! — among qualifying vertices the one with the smallest label, ties broken
//! by smallest index — and fails with `NoExtension` when none qualifies.
//! Iterations run `i = 0 ..= floor(c1 sqrt(n) ln n)`; exhausting them is a
//! `WindowExhausted` failure, and a success window whose lower end is at
//! least `n` (no integer label can ever hit it) is reported up front as
//! `WindowUnreachable`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::ExtendTryParams;
use crate::graph::{Journey, Label, TemporalGraph, TimeEdge, Vertex};
use crate::sampling::uniform_edge_label;

/// Why a run did not reach the target through the success window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureMode {
    NoExtension,
    WindowExhausted,
    WindowUnreachable,
}

/// Outcome of one extend-try run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtendTryOutcome {
    pub success: bool,
    pub journey: Option<Journey>,
    /// `i` at termination; at most `floor(c1 sqrt(n) ln n)`.
    pub hops: u64,
    pub arrival_time: Option<Label>,
    pub failure_mode: Option<FailureMode>,
}

/// Label access for a single-labeled clique; lets the experiment query
/// sampled labels lazily instead of materializing all `n(n-1)/2` of them.
trait CliqueLabels {
    fn num_vertices(&self) -> usize;
    fn label(&self, u: Vertex, v: Vertex) -> Label;
}

struct GraphLabels<'a>(&'a TemporalGraph);

impl CliqueLabels for GraphLabels<'_> {
    fn num_vertices(&self) -> usize {
        self.0.num_vertices()
    }

    fn label(&self, u: Vertex, v: Vertex) -> Label {
        self.0.labels_of(u, v).expect("clique edge")[0]
    }
}

/// Uniform labels of the normalized clique drawn on demand; elementwise
/// identical to the labeling `sample_labeling` materializes for the same
/// seed and sample index.
struct SampledCliqueLabels {
    n: usize,
    seed: u64,
    sample_index: u64,
}

impl CliqueLabels for SampledCliqueLabels {
    fn num_vertices(&self) -> usize {
        self.n
    }

    fn label(&self, u: Vertex, v: Vertex) -> Label {
        uniform_edge_label(self.seed, self.sample_index, u, v, self.n as Label)
    }
}

/// Runs extend-try on an explicit normalized clique. Errors unless the graph
/// is a single-labeled clique with `max_label = n = params.n` and `s != t`.
pub fn extend_try(
    graph: &TemporalGraph,
    s: Vertex,
    t: Vertex,
    params: &ExtendTryParams,
) -> Result<ExtendTryOutcome> {
    let n = graph.num_vertices();
    if s >= n || t >= n {
        return Err(Error::InvalidVertex {
            vertex: s.max(t),
            num_vertices: n,
        });
    }
    if s == t {
        return Err(Error::invalid_input("extend_try: s and t must differ"));
    }
    if params.n as usize != n {
        return Err(Error::invalid_input(format!(
            "extend_try: params are for n = {}, graph has {n} vertices",
            params.n
        )));
    }
    if graph.max_label() as usize != n {
        return Err(Error::invalid_input(
            "extend_try: normalized clique requires max_label = n",
        ));
    }
    if graph.num_edges() != n * (n - 1) / 2 || graph.edges().iter().any(|e| e.labels.len() != 1) {
        return Err(Error::invalid_input(
            "extend_try: input must be a single-labeled clique",
        ));
    }
    let outcome = run(&GraphLabels(graph), s, t, params);
    if let Some(j) = &outcome.journey {
        debug_assert!(graph.validate_journey(j));
    }
    Ok(outcome)
}

#[allow(clippy::needless_range_loop)]
fn run<L: CliqueLabels>(
    labels: &L,
    s: Vertex,
    t: Vertex,
    params: &ExtendTryParams,
) -> ExtendTryOutcome {
    let n = labels.num_vertices();
    if !params.window_reachable() {
        return ExtendTryOutcome {
            success: false,
            journey: None,
            hops: 0,
            arrival_time: None,
            failure_mode: Some(FailureMode::WindowUnreachable),
        };
    }
    let (w_lo, w_hi) = (params.window_lower(), params.t0);
    let max_i = params.max_hops();
    let mut visited = vec![false; n];
    visited[s] = true;
    let mut chain: Vec<TimeEdge> = Vec::new();
    let mut cur = s;

    for i in 0..=max_i {
        let direct = labels.label(cur, t);
        if w_lo < direct as f64 && (direct as f64) < w_hi {
            debug_assert!(chain.last().is_none_or(|e| e.label < direct));
            chain.push(TimeEdge::new(cur, t, direct));
            let journey = Journey::new(chain);
            return ExtendTryOutcome {
                success: true,
                arrival_time: Some(journey.arrival_time()),
                journey: Some(journey),
                hops: i,
                failure_mode: None,
            };
        }
        let (lo, hi) = params.extension_window(i);
        let mut best: Option<(Label, Vertex)> = None;
        for u in 0..n {
            if visited[u] || u == t {
                continue;
            }
            let l = labels.label(cur, u);
            if lo < l as f64 && (l as f64) < hi && best.is_none_or(|b| (l, u) < b) {
                best = Some((l, u));
            }
        }
        match best {
            Some((l, u)) => {
                chain.push(TimeEdge::new(cur, u, l));
                visited[u] = true;
                cur = u;
            }
            None => {
                return ExtendTryOutcome {
                    success: false,
                    journey: None,
                    hops: i,
                    arrival_time: None,
                    failure_mode: Some(FailureMode::NoExtension),
                };
            }
        }
    }
    ExtendTryOutcome {
        success: false,
        journey: None,
        hops: max_i,
        arrival_time: None,
        failure_mode: Some(FailureMode::WindowExhausted),
    }
}

/// Aggregate of a seeded batch of extend-try runs on sampled normalized
/// cliques, with the analytical bound for comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: u64,
    pub c1: f64,
    pub r: f64,
    pub k: f64,
    pub t0: f64,
    /// Analytical lower bound on the success probability; vacuous when the
    /// window is unreachable at this `n`.
    pub success_bound: f64,
    pub window_reachable: bool,
    pub small_params_warning: bool,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub stderr: f64,
    pub failures_no_extension: u64,
    pub failures_window_exhausted: u64,
    pub failures_window_unreachable: u64,
    pub seed: u64,
}

const TRIAL_BATCH: u64 = 64;

/// Samples `trials` normalized clique labelings and runs extend-try on each
/// with `s = 0`, `t = 1`. Counting is integral, so reports are identical
/// for any worker count.
pub fn extend_try_experiment(
    n: u64,
    c1: f64,
    r: f64,
    trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::invalid_input("trials must be >= 1"));
    }
    if n < 2 {
        return Err(Error::invalid_input(
            "extend-try experiment: n must be >= 2",
        ));
    }
    let params = crate::formulas::extend_try_params(n, c1, r)?;

    #[derive(Default)]
    struct Counts {
        successes: u64,
        no_extension: u64,
        window_exhausted: u64,
        window_unreachable: u64,
    }
    let num_batches = trials.div_ceil(TRIAL_BATCH);
    let counts = (0..num_batches)
        .into_par_iter()
        .map(|b| {
            let mut acc = Counts::default();
            for trial in b * TRIAL_BATCH..((b + 1) * TRIAL_BATCH).min(trials) {
                let labels = SampledCliqueLabels {
                    n: n as usize,
                    seed,
                    sample_index: trial,
                };
                let outcome = run(&labels, 0, 1, &params);
                if outcome.success {
                    acc.successes += 1;
                } else {
                    match outcome.failure_mode.expect("failure has a mode") {
                        FailureMode::NoExtension => acc.no_extension += 1,
                        FailureMode::WindowExhausted => acc.window_exhausted += 1,
                        FailureMode::WindowUnreachable => acc.window_unreachable += 1,
                    }
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Counts::default(), |mut a, b| {
            a.successes += b.successes;
            a.no_extension += b.no_extension;
            a.window_exhausted += b.window_exhausted;
            a.window_unreachable += b.window_unreachable;
            a
        });

    let rate = counts.successes as f64 / trials as f64;
    // Bernoulli sample standard deviation over sqrt(trials).
    let stderr = if trials < 2 {
        0.0
    } else {
        (rate * (1.0 - rate) * trials as f64 / (trials as f64 - 1.0)).sqrt()
            / (trials as f64).sqrt()
    };
    Ok(ExperimentReport {
        n,
        c1,
        r,
        k: params.k,
        t0: params.t0,
        success_bound: params.success_bound,
        window_reachable: params.window_reachable(),
        small_params_warning: params.small_params_warning,
        trials,
        successes: counts.successes,
        success_rate: rate,
        stderr,
        failures_no_extension: counts.no_extension,
        failures_window_exhausted: counts.window_exhausted,
        failures_window_unreachable: counts.window_unreachable,
        seed,
    })
}
