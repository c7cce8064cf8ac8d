//! Property tests: the earliest-arrival scan against the brute-force
//! journey enumeration, structural invariants of distances on cliques and
//! paths, label-monotonicity, serialization round-trips, and independence
//! of the per-sample label streams.

use proptest::prelude::*;

use tempograph::estimators::oracle;
use tempograph::graph::{Label, TemporalGraph, Vertex};
use tempograph::io;
use tempograph::sampling::{make_clique, uniform_edge_label};

fn all_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Random single-labeled graph: n in 2..=7, a in 1..=6, each potential edge
/// absent or labeled.
fn arb_graph() -> impl Strategy<Value = TemporalGraph> {
    (2usize..=7, 1u32..=6).prop_flat_map(|(n, a)| {
        let pairs = all_pairs(n);
        let m = pairs.len();
        proptest::collection::vec(proptest::option::of(1..=a), m).prop_map(move |labels| {
            let edges = pairs
                .iter()
                .zip(&labels)
                .filter_map(|(&(u, v), l)| l.map(|l| (u, v, vec![l])))
                .collect();
            TemporalGraph::new(n, edges, a, a as f64).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The one-pass scan equals full enumeration over simple journeys, the
    /// clamp never exceeds the slow arrival, and witnesses validate with the
    /// advertised arrival time.
    #[test]
    fn foremost_equals_brute_force(g in arb_graph()) {
        let n = g.num_vertices();
        for s in 0..n {
            for t in 0..n {
                let report = g.foremost_journey(s, t).unwrap();
                prop_assert_eq!(report.delta_prime, oracle::foremost_arrival_brute(&g, s, t));
                prop_assert!(report.delta <= g.slow_arrival());
                match (report.delta_prime, &report.witness) {
                    (Some(arrival), Some(w)) => {
                        prop_assert!(g.validate_journey(w));
                        prop_assert_eq!(w.arrival_time(), arrival);
                    }
                    (Some(_), None) => prop_assert_eq!(s, t),
                    (None, w) => prop_assert!(w.is_none()),
                }
            }
        }
    }

    /// Adding one more availability to any pair never worsens any arrival.
    #[test]
    fn extra_label_is_monotone(
        g in arb_graph(),
        pair_selector in any::<prop::sample::Index>(),
        label in 1u32..=6,
    ) {
        let n = g.num_vertices();
        let pairs = all_pairs(n);
        let (u, v) = pairs[pair_selector.index(pairs.len())];
        let mut edges: Vec<(Vertex, Vertex, Vec<Label>)> = g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.labels.clone()))
            .collect();
        match edges.iter_mut().find(|(eu, ev, _)| (*eu, *ev) == (u, v)) {
            Some((_, _, labels)) => {
                if !labels.contains(&label) {
                    labels.push(label);
                }
            }
            None => edges.push((u, v, vec![label])),
        }
        let a = g.max_label().max(label);
        let augmented = TemporalGraph::new(n, edges, a, g.slow_arrival().max(a as f64)).unwrap();
        for s in 0..n {
            let before = g.earliest_arrivals(s).unwrap();
            let after = augmented.earliest_arrivals(s).unwrap();
            for (b, a) in before.iter().zip(&after) {
                match (b, a) {
                    (Some(x), Some(y)) => prop_assert!(y <= x),
                    (Some(_), None) => prop_assert!(false, "reachability lost"),
                    _ => {}
                }
            }
        }
    }

    /// In any labeled clique the direct edge is always available, so no
    /// distributional distance exceeds the largest label.
    #[test]
    fn clique_distances_are_bounded_by_a(
        n in 2usize..=6,
        seed in any::<u64>(),
        a in 1u32..=8,
    ) {
        let base = make_clique(n);
        let edges = base
            .edges
            .iter()
            .map(|&(u, v)| (u, v, vec![uniform_edge_label(seed, 0, u, v, a)]))
            .collect();
        let g = TemporalGraph::new(n, edges, a, a as f64).unwrap();
        for s in 0..n {
            let arrivals = g.earliest_arrivals(s).unwrap();
            for (t, arr) in arrivals.iter().enumerate() {
                if s != t {
                    let d = arr.expect("clique pairs are always reachable");
                    prop_assert!(d <= a);
                }
            }
        }
    }

    /// On a single-labeled path, a leaf-to-leaf direction is reachable iff
    /// its label sequence strictly increases; in particular at most one
    /// direction survives once the path has two or more edges.
    #[test]
    fn path_leaf_reachability_is_monotonicity(labels in proptest::collection::vec(1u32..=9, 2..=5)) {
        let a = *labels.iter().max().unwrap();
        let edges = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (i, i + 1, vec![l]))
            .collect();
        let n = labels.len() + 1;
        let g = TemporalGraph::new(n, edges, a, a as f64).unwrap();
        let fwd = g.foremost_journey(0, n - 1).unwrap().delta_prime;
        let back = g.foremost_journey(n - 1, 0).unwrap().delta_prime;
        let increasing = labels.windows(2).all(|w| w[0] < w[1]);
        let decreasing = labels.windows(2).all(|w| w[0] > w[1]);
        prop_assert_eq!(fwd.is_some(), increasing);
        prop_assert_eq!(back.is_some(), decreasing);
        prop_assert!(fwd.is_none() || back.is_none());
        if increasing {
            prop_assert_eq!(fwd, Some(*labels.last().unwrap()));
            prop_assert_eq!(back, None);
        }
    }

    /// tgraph text round-trips: parse(write(g)) reproduces the graph.
    #[test]
    fn tgraph_round_trip(g in arb_graph()) {
        let text = io::write_string(&g);
        let parsed = io::parse(&text).unwrap();
        prop_assert_eq!(parsed.num_vertices(), g.num_vertices());
        prop_assert_eq!(parsed.max_label(), g.max_label());
        prop_assert_eq!(parsed.slow_arrival(), g.slow_arrival());
        prop_assert_eq!(parsed.edges(), g.edges());
    }
}

/// Label streams at distinct sample indices decorrelate: Pearson correlation
/// at lag 0 between the labels drawn at indices 2k and 2k+1 stays under 0.01
/// over 1e5 index pairs.
#[test]
fn sample_streams_are_uncorrelated() {
    let n = 100_000u64;
    let a = 10;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
    for k in 0..n {
        let x = uniform_edge_label(42, 2 * k, 0, 1, a) as f64;
        let y = uniform_edge_label(42, 2 * k + 1, 0, 1, a) as f64;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let nf = n as f64;
    let cov = sxy / nf - (sx / nf) * (sy / nf);
    let vx = sxx / nf - (sx / nf) * (sx / nf);
    let vy = syy / nf - (sy / nf) * (sy / nf);
    let corr = cov / (vx * vy).sqrt();
    assert!(corr.abs() < 0.01, "lag-0 cross-correlation {corr}");
}
