//! Triad detection and Robust Spanning Index accumulation.
//!
//! For a head `u` the index sums `(ω_v(C(u)) · ω_w(C(v)) · ω_w(C(u)))^(1/3)`
//! over every valid triad `(u, w, v)` and divides by `d(u)·(d(u) − 1)`:
//!
//! * closed triads: `v → u` is a stored edge and `w` is a common predecessor
//!   of `u` and `v` from a third community;
//! * open triads: `v` is another border vertex of `C(u)` joined to `u` by an
//!   implied augmented edge, and `w` is a common foreign predecessor.
//!
//! Each head is scored by one task in a fixed iteration order, so results are
//! bitwise identical for any number of threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::border::BorderIndex;
use crate::graph::{CommunityAssignment, CommunityId, TargetSet, UndirectedGraph, VertexId, NO_COLUMN};
use crate::subgraph::PredecessorGraph;
use crate::weights::{InteractionMatrix, MatrixPhase};

/// Per-vertex scores, 0 for every vertex that is not a scored border vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct RsiScores {
    scores: Vec<f64>,
}

impl RsiScores {
    pub fn new(scores: Vec<f64>) -> Self {
        Self { scores }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.scores[v as usize]
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub vertex: VertexId,
    pub score: f64,
}

/// Vertices ordered by descending score, ties by ascending ID.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedSpanners {
    pub entries: Vec<RankedEntry>,
}

impl RankedSpanners {
    pub fn vertices(&self) -> Vec<VertexId> {
        self.entries.iter().map(|e| e.vertex).collect()
    }
}

/// Number of triad terms that contributed to the scores.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TriadCounts {
    pub closed: u64,
    pub open: u64,
}

impl TriadCounts {
    pub fn total(&self) -> u64 {
        self.closed + self.open
    }
}

/// Calls `f` for every element present in both ascending slices.
#[inline]
fn for_each_common(a: &[u32], b: &[u32], mut f: impl FnMut(u32)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

struct BorderView<'a> {
    community: Vec<CommunityId>,
    column: Vec<u32>,
    matrix: &'a InteractionMatrix,
    pred: &'a PredecessorGraph,
}

impl BorderView<'_> {
    #[inline]
    fn weight(&self, j: u32, col: u32) -> f64 {
        self.matrix.cell(j as usize, col as usize)
    }

    fn head_sum(&self, u: u32) -> (f64, TriadCounts) {
        let cu = self.column[u as usize];
        let comm_u = self.community[u as usize];
        let pred_u = self.pred.predecessors(u);
        let mut sum = 0.0f64;
        let mut counts = TriadCounts::default();

        for &v in pred_u {
            let cv = self.column[v as usize];
            if cv == NO_COLUMN {
                continue;
            }
            let w_vu = self.weight(v, cu);
            if w_vu == 0.0 {
                continue;
            }
            let comm_v = self.community[v as usize];
            for_each_common(pred_u, self.pred.predecessors(v), |w| {
                if self.community[w as usize] == comm_v {
                    return;
                }
                let w_wv = self.weight(w, cv);
                let w_wu = self.weight(w, cu);
                if w_wv > 0.0 && w_wu > 0.0 {
                    sum += (w_vu * w_wv * w_wu).cbrt();
                    counts.closed += 1;
                }
            });
        }

        // v ranges over border vertices of C(u) adjacent to a foreign
        // predecessor w of u, i.e. v ∈ pred(w), which is the same set as
        // "w is a common predecessor of u and v"
        for &w in pred_u {
            let w_wu = self.weight(w, cu);
            if w_wu == 0.0 {
                continue;
            }
            for &v in self.pred.predecessors(w) {
                if v == u || self.community[v as usize] != comm_u {
                    continue;
                }
                let w_vu = self.weight(v, cu);
                if w_vu > 0.0 {
                    sum += (w_vu * w_wu * w_wu).cbrt();
                    counts.open += 1;
                }
            }
        }
        (sum, counts)
    }
}

/// Scores every border vertex whose community is targeted and whose degree in
/// the input graph is at least 2. `matrix` must be normalized.
pub fn compute_rsi(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    border: &BorderIndex,
    matrix: &InteractionMatrix,
    pred: &PredecessorGraph,
) -> RsiScores {
    compute_rsi_with_counts(graph, communities, targets, border, matrix, pred).0
}

/// [`compute_rsi`] plus the number of contributing triad terms.
pub fn compute_rsi_with_counts(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    border: &BorderIndex,
    matrix: &InteractionMatrix,
    pred: &PredecessorGraph,
) -> (RsiScores, TriadCounts) {
    assert_eq!(
        matrix.phase(),
        MatrixPhase::Normalized,
        "scores need normalized weights"
    );
    assert_eq!(matrix.rows(), border.len());
    assert_eq!(pred.border_count(), border.len());

    let community: Vec<CommunityId> = border.vertices().iter().map(|&v| communities.community(v)).collect();
    let column = community
        .iter()
        .map(|&c| targets.column(c).map_or(NO_COLUMN, |i| i as u32))
        .collect();
    let view = BorderView {
        community,
        column,
        matrix,
        pred,
    };

    let per_head: Vec<(f64, TriadCounts)> = (0..border.len() as u32)
        .into_par_iter()
        .map(|j| {
            let u = border.global(j);
            let d = graph.degree(u);
            if view.column[j as usize] == NO_COLUMN || d < 2 {
                return (0.0, TriadCounts::default());
            }
            let (sum, counts) = view.head_sum(j);
            (sum / (d as f64 * (d as f64 - 1.0)), counts)
        })
        .collect();

    let mut scores = vec![0.0; graph.vertex_count()];
    let mut totals = TriadCounts::default();
    for (j, (score, counts)) in per_head.into_iter().enumerate() {
        scores[border.global(j as u32) as usize] = score;
        totals.closed += counts.closed;
        totals.open += counts.open;
    }
    (RsiScores { scores }, totals)
}

/// The `k` highest-scoring vertices (all vertices are eligible, including
/// zero scores); exactly `min(k, |V|)` entries.
pub fn top_k(scores: &RsiScores, k: usize) -> RankedSpanners {
    let mut order: Vec<VertexId> = (0..scores.len() as VertexId).collect();
    order.sort_by(|&a, &b| scores.get(b).total_cmp(&scores.get(a)).then(a.cmp(&b)));
    let entries = order
        .into_iter()
        .take(k)
        .enumerate()
        .map(|(i, v)| RankedEntry {
            rank: i + 1,
            vertex: v,
            score: scores.get(v),
        })
        .collect();
    RankedSpanners { entries }
}
