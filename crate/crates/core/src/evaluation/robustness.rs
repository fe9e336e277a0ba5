//! Average weighted number of connected communities (AWCC) and its
//! behaviour under random node or link failure.
//!
//! `AWCC(S) = (1/|S|) Σ_{v∈S} |ζ(v)| / d(v)` where `ζ(v)` is the set of
//! communities among `v`'s neighbors (its own included). The absolute variant
//! recomputes `ζ(v)` over surviving links but keeps the original degree.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::{mean_and_stderr, trial_rng};
use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, CommunityId, UndirectedGraph, VertexId};

/// Removed vertices and links layered over an unchanged graph.
#[derive(Debug, Clone)]
pub struct DisruptionState {
    removed_vertices: Vec<bool>,
    removed_edges: HashSet<(VertexId, VertexId)>,
}

#[inline]
fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl DisruptionState {
    pub fn new(graph: &UndirectedGraph) -> Self {
        Self {
            removed_vertices: vec![false; graph.vertex_count()],
            removed_edges: HashSet::new(),
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.removed_vertices[v as usize] = true;
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        self.removed_edges.insert(edge_key(u, v));
    }

    pub fn is_vertex_removed(&self, v: VertexId) -> bool {
        self.removed_vertices[v as usize]
    }

    /// A link is usable when neither endpoint nor the link itself is removed.
    pub fn is_edge_usable(&self, u: VertexId, v: VertexId) -> bool {
        !self.removed_vertices[u as usize]
            && !self.removed_vertices[v as usize]
            && !self.removed_edges.contains(&edge_key(u, v))
    }

    pub fn removed_vertex_count(&self) -> usize {
        self.removed_vertices.iter().filter(|&&r| r).count()
    }

    pub fn removed_edge_count(&self) -> usize {
        self.removed_edges.len()
    }
}

fn check_set(graph: &UndirectedGraph, set: &[VertexId]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if let Some(&v) = set.iter().find(|&&v| v as usize >= graph.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: v as u64,
            vertex_count: graph.vertex_count(),
        });
    }
    Ok(())
}

fn community_span(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    v: VertexId,
    usable: impl Fn(VertexId) -> bool,
) -> f64 {
    let d = graph.degree(v);
    if d == 0 {
        return 0.0;
    }
    let mut seen: Vec<CommunityId> = graph
        .neighbors(v)
        .iter()
        .filter(|&&x| usable(x))
        .map(|&x| communities.community(x))
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len() as f64 / d as f64
}

pub fn awcc(graph: &UndirectedGraph, communities: &CommunityAssignment, set: &[VertexId]) -> Result<f64> {
    check_set(graph, set)?;
    let sum: f64 = set
        .iter()
        .map(|&v| community_span(graph, communities, v, |_| true))
        .sum();
    Ok(sum / set.len() as f64)
}

/// AWCC with `ζ(v)` restricted to surviving links and the original `d(v)`.
/// Removed members of `set` contribute 0 but still count in `|S|`.
pub fn absolute_awcc(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    set: &[VertexId],
    disruption: &DisruptionState,
) -> Result<f64> {
    check_set(graph, set)?;
    let sum: f64 = set
        .iter()
        .map(|&v| {
            if disruption.is_vertex_removed(v) {
                0.0
            } else {
                community_span(graph, communities, v, |x| disruption.is_edge_usable(v, x))
            }
        })
        .sum();
    Ok(sum / set.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RemovalMode {
    Edge,
    Node,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemovalSchedule {
    pub mode: RemovalMode,
    pub step_fraction: f64,
    pub max_fraction: f64,
    pub trials: usize,
    pub rng_seed: u64,
}

impl RemovalSchedule {
    pub fn new(mode: RemovalMode) -> Self {
        Self {
            mode,
            step_fraction: 0.05,
            max_fraction: 0.75,
            trials: 10,
            rng_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.step_fraction > 0.0
            && self.step_fraction <= self.max_fraction
            && self.max_fraction <= 1.0
            && self.trials > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "removal schedule needs 0 < step <= max <= 1 and trials > 0, got step={}, max={}, trials={}",
                self.step_fraction, self.max_fraction, self.trials
            )))
        }
    }

    /// Cumulative removal fractions, starting with 0.
    pub fn fractions(&self) -> Vec<f64> {
        let steps = (self.max_fraction / self.step_fraction + 1e-9).floor() as usize;
        (0..=steps)
            .map(|s| ((s as f64 * self.step_fraction) * 1e9).round() / 1e9)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RobustnessPoint {
    pub fraction: f64,
    pub mean_awcc: f64,
    pub stderr: f64,
}

/// A random permutation of the removable items of one trial.
enum RemovalOrder {
    Edges(Vec<(VertexId, VertexId)>),
    Nodes(Vec<VertexId>),
}

impl RemovalOrder {
    fn shuffled(graph: &UndirectedGraph, mode: RemovalMode, rng: &mut impl rand::Rng) -> Self {
        match mode {
            RemovalMode::Edge => {
                let mut edges: Vec<_> = graph.edges().collect();
                edges.shuffle(rng);
                Self::Edges(edges)
            }
            RemovalMode::Node => {
                let mut nodes: Vec<_> = graph.vertices().collect();
                nodes.shuffle(rng);
                Self::Nodes(nodes)
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            Self::Edges(e) => e.len(),
            Self::Nodes(n) => n.len(),
        }
    }

    fn apply(&self, state: &mut DisruptionState, range: std::ops::Range<usize>) {
        match self {
            Self::Edges(e) => e[range].iter().for_each(|&(u, v)| state.remove_edge(u, v)),
            Self::Nodes(n) => n[range].iter().for_each(|&v| state.remove_vertex(v)),
        }
    }
}

fn run_trial(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    set: &[VertexId],
    schedule: &RemovalSchedule,
    fractions: &[f64],
    trial: usize,
) -> Vec<f64> {
    let mut rng = trial_rng(schedule.rng_seed, trial as u64);
    let order = RemovalOrder::shuffled(graph, schedule.mode, &mut rng);
    let total = order.len();
    let mut state = DisruptionState::new(graph);
    let mut removed = 0usize;
    fractions
        .iter()
        .map(|&f| {
            let target = ((f * total as f64).round() as usize).min(total);
            order.apply(&mut state, removed..target);
            removed = target;
            absolute_awcc(graph, communities, set, &state).expect("set validated")
        })
        .collect()
}

/// Mean absolute AWCC of `set` at each cumulative removal fraction.
///
/// Within a trial, removals accumulate: each step removes a further uniformly
/// random batch of the remaining links (or vertices). Trial `t` uses random
/// stream `t`.
pub fn simulate_removal(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    set: &[VertexId],
    schedule: &RemovalSchedule,
) -> Result<Vec<RobustnessPoint>> {
    schedule.validate()?;
    check_set(graph, set)?;
    let fractions = schedule.fractions();
    let per_trial: Vec<Vec<f64>> = (0..schedule.trials)
        .into_par_iter()
        .map(|t| run_trial(graph, communities, set, schedule, &fractions, t))
        .collect();
    Ok(fractions
        .iter()
        .enumerate()
        .map(|(s, &fraction)| {
            let column: Vec<f64> = per_trial.iter().map(|trial| trial[s]).collect();
            let (mean_awcc, stderr) = mean_and_stderr(&column);
            RobustnessPoint {
                fraction,
                mean_awcc,
                stderr,
            }
        })
        .collect())
}
