//! Monte Carlo and exhaustive-enumeration estimation of the statistical
//! quantities: expected temporal-path counts, the maximum expected temporal
//! distance (MD) and the temporal diameter (TD), plus the brute-force
//! oracles the rest of the crate is validated against.
//!
//! Sampling fans out over rayon workers in fixed-size batches keyed by
//! sample index; batch partials are folded in batch order, so a run with any
//! worker count reproduces the single-threaded result bit-for-bit.

use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Label, TemporalGraph, Vertex};
use crate::sampling::{sample_labeling, uniform_edge_label, BaseGraph, SampleSpec};

/// What an [`EstimateReport`] estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    PathCount,
    Md,
    Td,
    PairDistance,
}

/// A Monte Carlo estimate. `stderr` is the sample standard deviation divided
/// by `sqrt(samples)`; for MD it refers to the per-sample distances of the
/// `argmax_pair` (the pair attaining the maximum estimated expectation).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub quantity: Quantity,
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub argmax_pair: Option<(Vertex, Vertex)>,
}

const BATCH_SIZE: u64 = 512;

/// Runs `body` over sample indices `0..samples` in fixed batches and folds
/// the batch partials in index order.
fn batched_samples<P, I, B>(samples: u64, init: I, body: B) -> Vec<P>
where
    P: Send,
    I: Fn() -> P + Sync,
    B: Fn(&mut P, u64) + Sync,
{
    let num_batches = samples.div_ceil(BATCH_SIZE);
    (0..num_batches)
        .into_par_iter()
        .map(|b| {
            let mut acc = init();
            let lo = b * BATCH_SIZE;
            let hi = ((b + 1) * BATCH_SIZE).min(samples);
            for i in lo..hi {
                body(&mut acc, i);
            }
            acc
        })
        .collect()
}

fn stderr_from_sums(sum: f64, sumsq: f64, n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let var = ((sumsq - sum * sum / nf) / (nf - 1.0)).max(0.0);
    (var / nf).sqrt()
}

// ---------------------------------------------------------------------------
// Brute-force oracles.
// ---------------------------------------------------------------------------

/// Enumeration-based reference implementations, independent of the
/// earliest-arrival scan and of the closed forms they are used to check.
pub mod oracle {
    use super::*;

    /// Minimum arrival time over all simple (s,t)-journeys, by depth-first
    /// enumeration of every label-increasing simple path. `Some(0)` for
    /// `s == t`, `None` when no journey exists. Exponential; intended for
    /// small graphs.
    pub fn foremost_arrival_brute(graph: &TemporalGraph, s: Vertex, t: Vertex) -> Option<Label> {
        if s == t {
            return Some(0);
        }
        let n = graph.num_vertices();
        let mut adj: Vec<Vec<(Vertex, &[Label])>> = vec![Vec::new(); n];
        for e in graph.edges() {
            adj[e.u].push((e.v, &e.labels));
            adj[e.v].push((e.u, &e.labels));
        }
        let mut visited = vec![false; n];
        visited[s] = true;
        let mut best: Option<Label> = None;
        fn dfs(
            adj: &[Vec<(Vertex, &[Label])>],
            cur: Vertex,
            t: Vertex,
            last: Label,
            visited: &mut [bool],
            best: &mut Option<Label>,
        ) {
            for &(v, labels) in &adj[cur] {
                if visited[v] {
                    continue;
                }
                for &l in labels {
                    if l <= last {
                        continue;
                    }
                    // Arrivals only grow along a journey; nothing at or past
                    // the incumbent can improve it.
                    if best.is_some_and(|b| l >= b) {
                        continue;
                    }
                    if v == t {
                        *best = Some(l);
                    } else {
                        visited[v] = true;
                        dfs(adj, v, t, l, visited, best);
                        visited[v] = false;
                    }
                }
            }
        }
        dfs(&adj, s, t, 0, &mut visited, &mut best);
        best
    }

    /// Numbers of journeys of every length `1..=max_len`, counted over
    /// ordered simple vertex sequences with strictly increasing labels
    /// (each direction of a sequence counts separately). The enumeration
    /// abandons a sequence prefix as soon as its labels stop increasing,
    /// which drops exactly the sequences that can no longer pass the check.
    /// Requires a single-labeled graph.
    pub fn count_journeys_by_length(graph: &TemporalGraph, max_len: usize) -> Result<Vec<u64>> {
        if graph.edges().iter().any(|e| e.labels.len() != 1) {
            return Err(Error::invalid_input(
                "journey counting is defined for single-labeled graphs",
            ));
        }
        let n = graph.num_vertices();
        let adj = single_label_adjacency(n, graph.edges().iter().map(|e| (e.u, e.v, e.labels[0])));
        Ok(count_increasing_sequences(n, &adj, max_len))
    }

    pub(crate) fn single_label_adjacency(
        n: usize,
        edges: impl Iterator<Item = (Vertex, Vertex, Label)>,
    ) -> Vec<Vec<(Vertex, Label)>> {
        let mut adj: Vec<Vec<(Vertex, Label)>> = vec![Vec::new(); n];
        for (u, v, l) in edges {
            adj[u].push((v, l));
            adj[v].push((u, l));
        }
        adj
    }

    pub(crate) fn count_increasing_sequences(
        n: usize,
        adj: &[Vec<(Vertex, Label)>],
        max_len: usize,
    ) -> Vec<u64> {
        let mut counts = vec![0u64; max_len + 1];
        let mut visited = vec![false; n];
        fn dfs(
            adj: &[Vec<(Vertex, Label)>],
            cur: Vertex,
            last: Label,
            depth: usize,
            max_len: usize,
            visited: &mut [bool],
            counts: &mut [u64],
        ) {
            if depth == max_len {
                return;
            }
            for &(v, l) in &adj[cur] {
                if visited[v] || l <= last {
                    continue;
                }
                counts[depth + 1] += 1;
                visited[v] = true;
                dfs(adj, v, l, depth + 1, max_len, visited, counts);
                visited[v] = false;
            }
        }
        for s in 0..n {
            visited[s] = true;
            dfs(adj, s, 0, 0, max_len, &mut visited, &mut counts);
            visited[s] = false;
        }
        counts
    }
}

// ---------------------------------------------------------------------------
// Monte Carlo estimators.
// ---------------------------------------------------------------------------

/// Monte Carlo estimate of the expected number of length-`k` journeys in the
/// uniform random temporal clique K_n. Per-sample counts are exact
/// enumerations, so the scale guard holds `n` at 8.
pub fn estimate_path_count(
    n: usize,
    k: usize,
    a: Label,
    samples: u64,
    seed: u64,
) -> Result<EstimateReport> {
    if n > 8 {
        return Err(Error::scale_guard(format!(
            "path-count estimation enumerates all vertex sequences per sample; n = {n} exceeds 8"
        )));
    }
    if n < 2 {
        return Err(Error::invalid_input("path count: n must be >= 2"));
    }
    if k == 0 || k > n - 1 {
        return Err(Error::invalid_input(format!(
            "path count: k must be in 1..={}",
            n - 1
        )));
    }
    if a == 0 {
        return Err(Error::invalid_input("path count: a must be >= 1"));
    }
    if samples == 0 {
        return Err(Error::invalid_input("samples must be >= 1"));
    }

    #[derive(Default)]
    struct Partial {
        sum: u64,
        sumsq: u128,
    }
    let partials = batched_samples(samples, Partial::default, |acc, index| {
        let adj = oracle::single_label_adjacency(
            n,
            (0..n).flat_map(|u| {
                (u + 1..n).map(move |v| (u, v, uniform_edge_label(seed, index, u, v, a)))
            }),
        );
        let count = oracle::count_increasing_sequences(n, &adj, k)[k];
        acc.sum += count;
        acc.sumsq += (count as u128) * (count as u128);
    });
    let (sum, sumsq) = partials
        .into_iter()
        .fold((0u64, 0u128), |(s, q), p| (s + p.sum, q + p.sumsq));
    Ok(EstimateReport {
        quantity: Quantity::PathCount,
        mean: sum as f64 / samples as f64,
        stderr: stderr_from_sums(sum as f64, sumsq as f64, samples),
        samples,
        seed,
        argmax_pair: None,
    })
}

#[derive(Clone)]
struct MdTdPartial {
    pair_sum: Vec<f64>,
    pair_sumsq: Vec<f64>,
    td_sum: f64,
    td_sumsq: f64,
}

impl MdTdPartial {
    fn new(n: usize) -> Self {
        MdTdPartial {
            pair_sum: vec![0.0; n * n],
            pair_sumsq: vec![0.0; n * n],
            td_sum: 0.0,
            td_sumsq: 0.0,
        }
    }

    fn merge(mut self, other: MdTdPartial) -> MdTdPartial {
        for (a, b) in self.pair_sum.iter_mut().zip(&other.pair_sum) {
            *a += b;
        }
        for (a, b) in self.pair_sumsq.iter_mut().zip(&other.pair_sumsq) {
            *a += b;
        }
        self.td_sum += other.td_sum;
        self.td_sumsq += other.td_sumsq;
        self
    }
}

fn uniform_spec(base: &BaseGraph, a: Label, nprime: f64, seed: u64) -> SampleSpec {
    SampleSpec::uniform(base.clone(), a, nprime, seed)
}

/// Shared-sample MD and TD estimation: every sampled labeling feeds both the
/// per-pair distance means (MD side) and the per-sample clamped diameter
/// (TD side), which keeps the per-sample relation `diam >= every delta`
/// available to callers comparing the two.
pub fn estimate_md_td(
    base: &BaseGraph,
    a: Label,
    nprime: f64,
    samples: u64,
    seed: u64,
) -> Result<(EstimateReport, EstimateReport)> {
    if samples == 0 {
        return Err(Error::invalid_input("samples must be >= 1"));
    }
    let spec = uniform_spec(base, a, nprime, seed);
    // Fail fast on bad graph parameters before spinning up workers.
    sample_labeling(&spec)?;

    let n = base.num_vertices;
    let partials = batched_samples(
        samples,
        || MdTdPartial::new(n),
        |acc, index| {
            let g = sample_labeling(&spec.clone().with_sample_index(index))
                .expect("validated spec stays valid");
            let mut sample_diam: f64 = 0.0;
            for s in 0..n {
                let arrivals = g.earliest_arrivals(s).expect("source in range");
                for (t, arr) in arrivals.iter().enumerate() {
                    if s == t {
                        continue;
                    }
                    let delta = match arr {
                        None => nprime,
                        Some(at) => (*at as f64).min(nprime),
                    };
                    acc.pair_sum[s * n + t] += delta;
                    acc.pair_sumsq[s * n + t] += delta * delta;
                    sample_diam = sample_diam.max(delta);
                }
            }
            acc.td_sum += sample_diam;
            acc.td_sumsq += sample_diam * sample_diam;
        },
    );
    let total = partials
        .into_iter()
        .reduce(MdTdPartial::merge)
        .expect("at least one batch");

    let mut best_pair = (0usize, 0usize);
    let mut best_mean = f64::NEG_INFINITY;
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let mean = total.pair_sum[s * n + t] / samples as f64;
            if mean > best_mean {
                best_mean = mean;
                best_pair = (s, t);
            }
        }
    }
    let (bs, bt) = best_pair;
    let md = EstimateReport {
        quantity: Quantity::Md,
        mean: best_mean,
        stderr: stderr_from_sums(
            total.pair_sum[bs * n + bt],
            total.pair_sumsq[bs * n + bt],
            samples,
        ),
        samples,
        seed,
        argmax_pair: Some(best_pair),
    };
    let td = EstimateReport {
        quantity: Quantity::Td,
        mean: total.td_sum / samples as f64,
        stderr: stderr_from_sums(total.td_sum, total.td_sumsq, samples),
        samples,
        seed,
        argmax_pair: None,
    };
    Ok((md, td))
}

/// Maximum over vertex pairs of the estimated expected temporal distance.
/// The max-of-means estimator is biased upward by O(stderr); the bias
/// shrinks as samples grow and is not corrected here.
pub fn estimate_md(
    base: &BaseGraph,
    a: Label,
    nprime: f64,
    samples: u64,
    seed: u64,
) -> Result<EstimateReport> {
    Ok(estimate_md_td(base, a, nprime, samples, seed)?.0)
}

/// Estimated temporal diameter: per sample the maximum distributional
/// distance clamped at `n'`, averaged over samples.
pub fn estimate_td(
    base: &BaseGraph,
    a: Label,
    nprime: f64,
    samples: u64,
    seed: u64,
) -> Result<EstimateReport> {
    Ok(estimate_md_td(base, a, nprime, samples, seed)?.1)
}

// ---------------------------------------------------------------------------
// Exhaustive expectations.
// ---------------------------------------------------------------------------

const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Iterates every labeling of `m` edges with labels `1..=a` (an odometer in
/// canonical edge order) and hands it to `visit`.
fn for_each_labeling(m: usize, a: Label, mut visit: impl FnMut(&[Label])) {
    let mut labels = vec![1 as Label; m];
    loop {
        visit(&labels);
        let mut pos = 0;
        loop {
            if pos == m {
                return;
            }
            if labels[pos] < a {
                labels[pos] += 1;
                break;
            }
            labels[pos] = 1;
            pos += 1;
        }
    }
}

fn exhaustive_guard(base: &BaseGraph, a: Label) -> Result<u64> {
    if a == 0 {
        return Err(Error::invalid_input(
            "exhaustive expectation: a must be >= 1",
        ));
    }
    let mut total: u64 = 1;
    for _ in 0..base.num_edges() {
        total = total
            .checked_mul(a as u64)
            .filter(|&t| t <= EXHAUSTIVE_LIMIT)
            .ok_or_else(|| {
                Error::scale_guard(format!(
                    "a^m = {a}^{} exceeds the exhaustive enumeration limit {EXHAUSTIVE_LIMIT}",
                    base.num_edges()
                ))
            })?;
    }
    Ok(total)
}

fn graph_for(base: &BaseGraph, labels: &[Label], a: Label, nprime: f64) -> TemporalGraph {
    let edges = base
        .edges
        .iter()
        .zip(labels)
        .map(|(&(u, v), &l)| (u, v, vec![l]))
        .collect();
    TemporalGraph::new(base.num_vertices, edges, a, nprime).expect("enumerated labeling is valid")
}

/// Exact per-pair expected temporal distances by full enumeration of all
/// `a^m` labelings, plus their maximum (the MD) and its argmax pair.
#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveMd {
    pub per_pair: Vec<Vec<f64>>,
    pub md: f64,
    pub argmax_pair: (Vertex, Vertex),
}

#[allow(clippy::needless_range_loop)]
pub fn exhaustive_md(base: &BaseGraph, a: Label, nprime: f64) -> Result<ExhaustiveMd> {
    let total = exhaustive_guard(base, a)?;
    let n = base.num_vertices;
    let mut sums = vec![0.0f64; n * n];
    for_each_labeling(base.num_edges(), a, |labels| {
        let g = graph_for(base, labels, a, nprime);
        for s in 0..n {
            let arrivals = g.earliest_arrivals(s).expect("source in range");
            for (t, arr) in arrivals.iter().enumerate() {
                if s == t {
                    continue;
                }
                sums[s * n + t] += match arr {
                    None => nprime,
                    Some(at) => (*at as f64).min(nprime),
                };
            }
        }
    });
    let per_pair: Vec<Vec<f64>> = (0..n)
        .map(|s| (0..n).map(|t| sums[s * n + t] / total as f64).collect())
        .collect();
    let mut argmax = (0, 1);
    let mut md = f64::NEG_INFINITY;
    for s in 0..n {
        for t in 0..n {
            if s != t && per_pair[s][t] > md {
                md = per_pair[s][t];
                argmax = (s, t);
            }
        }
    }
    Ok(ExhaustiveMd {
        per_pair,
        md,
        argmax_pair: argmax,
    })
}

/// Exact temporal diameter `E(min(d(G(L)), n'))` by full enumeration.
pub fn exhaustive_td(base: &BaseGraph, a: Label, nprime: f64) -> Result<f64> {
    let total = exhaustive_guard(base, a)?;
    let mut sum = 0.0f64;
    for_each_labeling(base.num_edges(), a, |labels| {
        sum += graph_for(base, labels, a, nprime).diameter_clamped();
    });
    Ok(sum / total as f64)
}

/// Exact expected number of length-`k` journeys under uniform labeling of
/// `base`, as a rational: total count over all `a^m` labelings divided by
/// `a^m`.
pub fn exhaustive_path_count(base: &BaseGraph, a: Label, k: usize) -> Result<BigRational> {
    let total = exhaustive_guard(base, a)?;
    if k == 0 {
        return Err(Error::invalid_input("path count: k must be >= 1"));
    }
    let n = base.num_vertices;
    let mut count_sum = BigInt::zero();
    for_each_labeling(base.num_edges(), a, |labels| {
        let adj = oracle::single_label_adjacency(
            n,
            base.edges.iter().zip(labels).map(|(&(u, v), &l)| (u, v, l)),
        );
        count_sum += oracle::count_increasing_sequences(n, &adj, k)[k];
    });
    Ok(BigRational::new(count_sum, BigInt::from(total)))
}

/// Which exact expectation [`exhaustive_expectation`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustiveQuantity {
    MdMatrix,
    Td,
    PathCount { k: usize },
}

/// Result of [`exhaustive_expectation`].
#[derive(Clone, Debug)]
pub enum ExhaustiveResult {
    MdMatrix(ExhaustiveMd),
    Td(f64),
    PathCount(BigRational),
}

/// Exact expectation over all `a^m` labelings of `base` (guarded at
/// `a^m <= 10^6`).
pub fn exhaustive_expectation(
    base: &BaseGraph,
    a: Label,
    nprime: f64,
    quantity: ExhaustiveQuantity,
) -> Result<ExhaustiveResult> {
    match quantity {
        ExhaustiveQuantity::MdMatrix => {
            Ok(ExhaustiveResult::MdMatrix(exhaustive_md(base, a, nprime)?))
        }
        ExhaustiveQuantity::Td => Ok(ExhaustiveResult::Td(exhaustive_td(base, a, nprime)?)),
        ExhaustiveQuantity::PathCount { k } => Ok(ExhaustiveResult::PathCount(
            exhaustive_path_count(base, a, k)?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{make_clique, make_path, make_star};
    use num::ToPrimitive;

    #[test]
    fn brute_force_agrees_on_a_hand_case() {
        let g = TemporalGraph::new(
            3,
            vec![(0, 2, vec![9]), (0, 1, vec![2]), (1, 2, vec![4])],
            9,
            9.0,
        )
        .unwrap();
        assert_eq!(oracle::foremost_arrival_brute(&g, 0, 2), Some(4));
        assert_eq!(oracle::foremost_arrival_brute(&g, 2, 0), Some(9));
        assert_eq!(oracle::foremost_arrival_brute(&g, 1, 1), Some(0));
    }

    #[test]
    fn path_count_k2_a1_is_exactly_two_with_zero_stderr() {
        let r = estimate_path_count(2, 1, 1, 50, 7).unwrap();
        assert_eq!(r.mean, 2.0);
        assert_eq!(r.stderr, 0.0);
        assert_eq!(r.samples, 50);
    }

    #[test]
    fn path_count_scale_and_input_guards() {
        assert!(matches!(
            estimate_path_count(9, 2, 3, 10, 0),
            Err(Error::ScaleGuard(_))
        ));
        assert!(estimate_path_count(3, 3, 3, 10, 0).is_err());
        assert!(estimate_path_count(3, 0, 3, 10, 0).is_err());
    }

    #[test]
    fn exhaustive_path_count_k3() {
        // All 8 labelings of K_3 with a = 2: expected length-2 count 3/2.
        let v = exhaustive_path_count(&make_clique(3), 2, 2).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(3), BigInt::from(2)));
        // All 27 labelings with a = 3: exactly 2.
        let v = exhaustive_path_count(&make_clique(3), 3, 2).unwrap();
        assert_eq!(v.to_f64().unwrap(), 2.0);
    }

    #[test]
    fn exhaustive_star_md_and_td_a2() {
        // Two-leaf star, a = 2, n' = 2: every labeling gives delta(leaf, leaf) = 2.
        let star = make_star(2);
        let md = exhaustive_md(&star, 2, 2.0).unwrap();
        assert_eq!(md.md, 2.0);
        let (s, t) = md.argmax_pair;
        assert!(s != 0 && t != 0, "argmax should be a leaf pair");
        assert_eq!(exhaustive_td(&star, 2, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn exhaustive_td_two_edge_path_is_slow() {
        // Whatever the labeling, one direction of some pair dies, so the
        // clamped diameter is always n' = 2.
        assert_eq!(exhaustive_td(&make_path(2), 2, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn exhaustive_scale_guard_triggers() {
        assert!(matches!(
            exhaustive_td(&make_clique(6), 16, 8.0),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn md_estimate_on_tiny_star_is_exact() {
        let (md, td) = estimate_md_td(&make_star(2), 2, 2.0, 40, 3).unwrap();
        assert_eq!(md.mean, 2.0);
        assert_eq!(md.stderr, 0.0);
        let (s, t) = md.argmax_pair.unwrap();
        assert!(s != 0 && t != 0);
        assert_eq!(td.mean, 2.0);
        assert!(td.mean >= md.mean);
    }

    #[test]
    fn md_td_reports_are_thread_count_invariant() {
        let base = make_clique(5);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| estimate_md_td(&base, 5, 2.5, 3000, 11).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn monte_carlo_matches_exhaustive_on_k3() {
        let base = make_clique(3);
        let exact = exhaustive_md(&base, 2, 1.5).unwrap().md;
        let (md, _) = estimate_md_td(&base, 2, 1.5, 20_000, 5).unwrap();
        assert!(
            (md.mean - exact).abs() <= 4.0 * md.stderr.max(1e-3),
            "mc {} vs exact {exact}",
            md.mean
        );
    }

    #[test]
    fn star_estimate_tracks_the_enumerated_expectation() {
        // Two leaves keep the max-of-means bias negligible; the enumerated
        // leaf-pair expectation at a = 10, n' = 10 is
        // (a^2-1)/(3a) + n'(a+1)/(2a) = 3.3 + 5.5 = 8.8.
        let exact = exhaustive_md(&make_star(2), 10, 10.0).unwrap().md;
        assert!((exact - 8.8).abs() < 1e-12);
        let (md, _) = estimate_md_td(&make_star(2), 10, 10.0, 20_000, 13).unwrap();
        assert!(
            (md.mean - exact).abs() <= 4.0 * md.stderr,
            "mc {} (stderr {}) vs exact {exact}",
            md.mean,
            md.stderr
        );
    }

    #[test]
    fn exhaustive_expectation_dispatches_all_quantities() {
        let star = make_star(2);
        match exhaustive_expectation(&star, 2, 2.0, ExhaustiveQuantity::MdMatrix).unwrap() {
            ExhaustiveResult::MdMatrix(m) => assert_eq!(m.md, 2.0),
            other => panic!("{other:?}"),
        }
        match exhaustive_expectation(&star, 2, 2.0, ExhaustiveQuantity::Td).unwrap() {
            ExhaustiveResult::Td(td) => assert_eq!(td, 2.0),
            other => panic!("{other:?}"),
        }
        match exhaustive_expectation(
            &make_clique(3),
            3,
            1.5,
            ExhaustiveQuantity::PathCount { k: 2 },
        )
        .unwrap()
        {
            ExhaustiveResult::PathCount(v) => assert_eq!(v.to_f64().unwrap(), 2.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monte_carlo_converges_to_exhaustive_across_families() {
        // Every configuration small enough to enumerate is also a
        // convergence check for the sampler.
        for (base, a, nprime) in [
            (make_star(3), 3, 2.0),
            (make_path(3), 3, 2.0),
            (make_clique(4), 3, 1.5),
        ] {
            let exact_md = exhaustive_md(&base, a, nprime).unwrap().md;
            let exact_td = exhaustive_td(&base, a, nprime).unwrap();
            let (md, td) = estimate_md_td(&base, a, nprime, 20_000, 17).unwrap();
            assert!(
                (md.mean - exact_md).abs() <= 4.0 * md.stderr.max(1e-9),
                "md {} vs exact {exact_md} on {base:?}",
                md.mean
            );
            assert!(
                (td.mean - exact_td).abs() <= 4.0 * td.stderr.max(1e-9),
                "td {} vs exact {exact_td} on {base:?}",
                td.mean
            );
        }
    }
}
