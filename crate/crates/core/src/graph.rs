//! Temporal graphs, journeys, and foremost-journey (earliest-arrival) distances.
//!
//! A temporal graph is an undirected graph whose edges carry sets of discrete
//! time labels; an edge can be crossed (in either direction) exactly at its
//! labels. A journey is a path whose consecutive time labels strictly
//! increase; its arrival time is the label of its last edge. The
//! distributional temporal distance `delta'(s,t)` is the minimum arrival time
//! over all (s,t)-journeys (unreachable if none exists), and the temporal
//! distance `delta(s,t) = min(delta'(s,t), n')` falls back on a fixed slow
//! journey with arrival time `n'`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Vertex index, `0..num_vertices`.
pub type Vertex = usize;

/// Discrete availability time of an edge; always >= 1.
pub type Label = u32;

/// An undirected edge with its sorted, deduplicated label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub labels: Vec<Label>,
}

/// A single availability `(u, v, l)`: edge `{u, v}` crossable at time `l`.
/// The pair is ordered by traversal direction; `(u, v, l)` and `(v, u, l)`
/// denote the same availability crossed in opposite directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TimeEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub label: Label,
}

impl TimeEdge {
    pub fn new(u: Vertex, v: Vertex, label: Label) -> Self {
        TimeEdge { u, v, label }
    }
}

/// A sequence of time edges; valid journeys chain on vertices, repeat no
/// vertex, and carry strictly increasing labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Journey {
    pub time_edges: Vec<TimeEdge>,
}

impl Journey {
    pub fn new(time_edges: Vec<TimeEdge>) -> Self {
        Journey { time_edges }
    }

    /// Label of the last edge. Panics on an empty journey (which is never
    /// produced by this crate; empty journeys are only representable so
    /// that `validate_journey` can reject them).
    pub fn arrival_time(&self) -> Label {
        self.time_edges
            .last()
            .expect("arrival time of empty journey")
            .label
    }

    pub fn len(&self) -> usize {
        self.time_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time_edges.is_empty()
    }

    /// Vertices in visit order: start, then the head of every edge.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs = Vec::with_capacity(self.time_edges.len() + 1);
        if let Some(first) = self.time_edges.first() {
            vs.push(first.u);
        }
        vs.extend(self.time_edges.iter().map(|e| e.v));
        vs
    }
}

/// Distances for one ordered pair `(s, t)`.
///
/// `delta_prime` is `None` when no (s,t)-journey exists; `delta` is then the
/// slow-journey arrival `n'`. By convention `delta_prime = Some(0)` for
/// `s == t` (with no witness).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub delta_prime: Option<Label>,
    pub delta: f64,
    pub witness: Option<Journey>,
}

/// An undirected temporal graph: `num_vertices`, labeled edges, the largest
/// assignable label `max_label` (the `a` of the uniform labeling model) and
/// the slow-journey arrival time `slow_arrival` (the model's `n'`).
#[derive(Clone, Debug)]
pub struct TemporalGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    max_label: Label,
    slow_arrival: f64,
    // (label, u, v) with u < v, sorted by (label, u, v); one entry per
    // availability. Built once; all distance passes scan this.
    time_edges: Vec<(Label, Vertex, Vertex)>,
    edge_index: HashMap<(Vertex, Vertex), usize>,
}

impl TemporalGraph {
    /// Builds and validates a temporal graph. Edges are given as
    /// `(u, v, labels)` tuples in any order and any orientation; they are
    /// normalized to `u < v` and sorted.
    ///
    /// Rejected: self-loops, duplicate pairs, empty or duplicate label sets,
    /// labels outside `1..=max_label`, out-of-range vertices, and
    /// `slow_arrival < max_label / 2` (the slow journey must not beat the
    /// mean label of the uniform model).
    pub fn new(
        num_vertices: usize,
        edges: Vec<(Vertex, Vertex, Vec<Label>)>,
        max_label: Label,
        slow_arrival: f64,
    ) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::invalid_input("graph needs at least one vertex"));
        }
        if max_label == 0 {
            return Err(Error::invalid_input("max_label must be >= 1"));
        }
        if !slow_arrival.is_finite() || slow_arrival <= 0.0 {
            return Err(Error::invalid_input(format!(
                "slow_arrival must be a positive finite number, got {slow_arrival}"
            )));
        }
        if slow_arrival < max_label as f64 / 2.0 {
            return Err(Error::invalid_input(format!(
                "slow_arrival {} must be at least max_label/2 = {}",
                slow_arrival,
                max_label as f64 / 2.0
            )));
        }

        let mut normalized: Vec<Edge> = Vec::with_capacity(edges.len());
        for (u, v, mut labels) in edges {
            if u == v {
                return Err(Error::invalid_input(format!("self-loop on vertex {u}")));
            }
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidVertex {
                    vertex: u.max(v),
                    num_vertices,
                });
            }
            if labels.is_empty() {
                return Err(Error::invalid_input(format!(
                    "edge ({u}, {v}) has an empty label set"
                )));
            }
            labels.sort_unstable();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid_input(format!(
                    "edge ({u}, {v}) has duplicate labels"
                )));
            }
            for &l in &labels {
                if l == 0 || l > max_label {
                    return Err(Error::invalid_input(format!(
                        "edge ({u}, {v}) label {l} outside 1..={max_label}"
                    )));
                }
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            normalized.push(Edge { u, v, labels });
        }
        normalized.sort_by_key(|e| (e.u, e.v));
        if normalized
            .windows(2)
            .any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::invalid_input(
                "duplicate edge pair (put multiple labels on one edge instead)",
            ));
        }

        let mut time_edges = Vec::new();
        for e in &normalized {
            for &l in &e.labels {
                time_edges.push((l, e.u, e.v));
            }
        }
        time_edges.sort_unstable();
        let edge_index = normalized
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.u, e.v), i))
            .collect();

        Ok(TemporalGraph {
            num_vertices,
            edges: normalized,
            max_label,
            slow_arrival,
            time_edges,
            edge_index,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn max_label(&self) -> Label {
        self.max_label
    }

    pub fn slow_arrival(&self) -> f64 {
        self.slow_arrival
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted labels of edge `{u, v}`, or `None` if the pair is not an edge.
    pub fn labels_of(&self, u: Vertex, v: Vertex) -> Option<&[Label]> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index
            .get(&key)
            .map(|&i| &self.edges[i].labels[..])
    }

    pub fn has_time_edge(&self, u: Vertex, v: Vertex, label: Label) -> bool {
        self.labels_of(u, v)
            .is_some_and(|ls| ls.binary_search(&label).is_ok())
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.num_vertices {
            return Err(Error::InvalidVertex {
                vertex: v,
                num_vertices: self.num_vertices,
            });
        }
        Ok(())
    }

    /// True iff `journey` is a valid journey of this graph: nonempty, every
    /// time edge exists, consecutive edges chain on vertices, no vertex is
    /// visited twice, and labels strictly increase.
    pub fn validate_journey(&self, journey: &Journey) -> bool {
        let edges = &journey.time_edges;
        if edges.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.num_vertices];
        for (i, e) in edges.iter().enumerate() {
            if e.u >= self.num_vertices || e.v >= self.num_vertices {
                return false;
            }
            if !self.has_time_edge(e.u, e.v, e.label) {
                return false;
            }
            if i > 0 {
                if edges[i - 1].v != e.u {
                    return false;
                }
                if edges[i - 1].label >= e.label {
                    return false;
                }
            }
            // Vertex-distinctness: mark tails as we pass; the final head is
            // checked after the loop.
            if seen[e.u] {
                return false;
            }
            seen[e.u] = true;
        }
        let last = edges.last().unwrap().v;
        !seen[last]
    }

    /// Earliest arrival times from `s` to every vertex, with `arrival[s] = 0`.
    ///
    /// Single pass over all time edges in ascending label order: a time edge
    /// `(u, v, l)` relaxes `v` iff `arrival[u] < l` (strict, which enforces
    /// strictly increasing labels; equal-label availabilities can therefore
    /// never chain through each other regardless of their order within a
    /// label). Because labels ascend, an arrival value is set at most once.
    pub fn earliest_arrivals(&self, s: Vertex) -> Result<Vec<Option<Label>>> {
        Ok(self.earliest_arrivals_with_pred(s, None)?.0)
    }

    #[allow(clippy::type_complexity)]
    fn earliest_arrivals_with_pred(
        &self,
        s: Vertex,
        stop_at: Option<Vertex>,
    ) -> Result<(Vec<Option<Label>>, Vec<Option<TimeEdge>>)> {
        self.check_vertex(s)?;
        if let Some(t) = stop_at {
            self.check_vertex(t)?;
        }
        let mut arrival: Vec<Option<Label>> = vec![None; self.num_vertices];
        let mut pred: Vec<Option<TimeEdge>> = vec![None; self.num_vertices];
        arrival[s] = Some(0);
        for &(l, u, v) in &self.time_edges {
            if arrival[v].is_none() && arrival[u].is_some_and(|au| au < l) {
                arrival[v] = Some(l);
                pred[v] = Some(TimeEdge::new(u, v, l));
            } else if arrival[u].is_none() && arrival[v].is_some_and(|av| av < l) {
                arrival[u] = Some(l);
                pred[u] = Some(TimeEdge::new(v, u, l));
            }
            if stop_at.is_some_and(|t| arrival[t].is_some()) {
                break;
            }
        }
        Ok((arrival, pred))
    }

    /// Foremost journey from `s` to `t`: minimum arrival time over all
    /// (s,t)-journeys, the clamped distance `min(delta', n')`, and a witness
    /// journey when one exists.
    pub fn foremost_journey(&self, s: Vertex, t: Vertex) -> Result<DistanceReport> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if s == t {
            return Ok(DistanceReport {
                delta_prime: Some(0),
                delta: 0.0,
                witness: None,
            });
        }
        let (arrival, pred) = self.earliest_arrivals_with_pred(s, Some(t))?;
        Ok(self.report_for(s, t, &arrival, &pred))
    }

    fn report_for(
        &self,
        s: Vertex,
        t: Vertex,
        arrival: &[Option<Label>],
        pred: &[Option<TimeEdge>],
    ) -> DistanceReport {
        if s == t {
            return DistanceReport {
                delta_prime: Some(0),
                delta: 0.0,
                witness: None,
            };
        }
        match arrival[t] {
            None => DistanceReport {
                delta_prime: None,
                delta: self.slow_arrival,
                witness: None,
            },
            Some(at) => {
                let witness = self.reconstruct(s, t, pred);
                debug_assert!(self.validate_journey(&witness));
                debug_assert_eq!(witness.arrival_time(), at);
                DistanceReport {
                    delta_prime: Some(at),
                    delta: (at as f64).min(self.slow_arrival),
                    witness: Some(witness),
                }
            }
        }
    }

    /// Walks predecessor edges back from `t`. Arrival values strictly
    /// decrease along the walk so it cannot cycle, but if a repeated vertex
    /// ever showed up the loop would be spliced out here: arrival times are
    /// what the downstream math consumes, and splicing never changes them.
    fn reconstruct(&self, s: Vertex, t: Vertex, pred: &[Option<TimeEdge>]) -> Journey {
        let mut rev: Vec<TimeEdge> = Vec::new();
        let mut pos_of: HashMap<Vertex, usize> = HashMap::new();
        let mut cur = t;
        while cur != s {
            let e = pred[cur].expect("predecessor chain broken");
            if let Some(&p) = pos_of.get(&e.u) {
                // Splice: drop everything between the earlier visit and here.
                for dropped in rev.drain(p + 1..) {
                    pos_of.remove(&dropped.v);
                }
                cur = e.u;
                continue;
            }
            pos_of.insert(e.v, rev.len());
            rev.push(e);
            cur = e.u;
        }
        rev.reverse();
        Journey::new(rev)
    }

    /// All-pairs distance reports; entry `[s][t]` equals
    /// `foremost_journey(s, t)`. One earliest-arrival pass per source.
    pub fn all_pairs_distances(&self) -> Vec<Vec<DistanceReport>> {
        (0..self.num_vertices)
            .map(|s| {
                let (arrival, pred) = self
                    .earliest_arrivals_with_pred(s, None)
                    .expect("source in range");
                (0..self.num_vertices)
                    .map(|t| self.report_for(s, t, &arrival, &pred))
                    .collect()
            })
            .collect()
    }

    /// `d(G(L)) = max over ordered pairs of delta'` with unreachable treated
    /// as infinity, clamped at `n'`: `diam(G(L)) = min(d, n')`. Equals the
    /// maximum over ordered pairs of `delta(s,t)`.
    pub fn diameter_clamped(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for s in 0..self.num_vertices {
            let arrival = self.earliest_arrivals(s).expect("source in range");
            for (t, a) in arrival.iter().enumerate() {
                if t == s {
                    continue;
                }
                let delta = match a {
                    None => self.slow_arrival,
                    Some(at) => (*at as f64).min(self.slow_arrival),
                };
                worst = worst.max(delta);
                if worst == self.slow_arrival {
                    return worst;
                }
            }
        }
        worst
    }
}
