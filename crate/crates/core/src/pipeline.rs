//! End-to-end scoring: border filter, weights, border subgraph, triads.

use std::time::{Duration, Instant};

use crate::border::{find_border_vertices, BorderIndex};
use crate::graph::{CommunityAssignment, TargetSet, UndirectedGraph};
use crate::rsi::{compute_rsi_with_counts, RsiScores, TriadCounts};
use crate::subgraph::{build_predecessor_graph, PredecessorGraph};
use crate::weights::{compute_weights, count_neighbor_communities, normalize_weights, InteractionMatrix};

#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimings {
    pub border: Duration,
    pub counts: Duration,
    pub weights: Duration,
    pub normalize: Duration,
    pub subgraph: Duration,
    pub scores: Duration,
}

impl PhaseTimings {
    /// Weight computation through scoring, excluding the border filter.
    pub fn weights_and_scores(&self) -> Duration {
        self.counts + self.weights + self.normalize + self.subgraph + self.scores
    }

    pub fn total(&self) -> Duration {
        self.border + self.weights_and_scores()
    }
}

/// All intermediate structures of one scoring run.
#[derive(Debug, Clone)]
pub struct ScoreRun {
    pub border: BorderIndex,
    pub matrix: InteractionMatrix,
    pub predecessors: PredecessorGraph,
    pub scores: RsiScores,
    pub triads: TriadCounts,
    pub timings: PhaseTimings,
}

impl ScoreRun {
    pub fn omega_max(&self) -> f64 {
        self.matrix.omega_max()
    }
}

fn timed<T>(slot: &mut Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed();
    out
}

/// Runs the full pipeline on the current rayon pool.
pub fn score(graph: &UndirectedGraph, communities: &CommunityAssignment, targets: &TargetSet) -> ScoreRun {
    let mut t = PhaseTimings::default();
    let border = timed(&mut t.border, || find_border_vertices(graph, communities));
    let counts = timed(&mut t.counts, || {
        count_neighbor_communities(graph, communities, targets, &border)
    });
    let weights = timed(&mut t.weights, || compute_weights(counts));
    let matrix = timed(&mut t.normalize, || normalize_weights(weights));
    let predecessors = timed(&mut t.subgraph, || build_predecessor_graph(graph, communities, &border));
    let (scores, triads) = timed(&mut t.scores, || {
        compute_rsi_with_counts(graph, communities, targets, &border, &matrix, &predecessors)
    });
    ScoreRun {
        border,
        matrix,
        predecessors,
        scores,
        triads,
        timings: t,
    }
}
