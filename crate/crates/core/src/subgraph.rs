//! Border subgraph stored as predecessor lists.
//!
//! Only inter-community edges between two border vertices are materialized.
//! Same-community (augmented) edges are implied by community membership and
//! never stored. Because the input is undirected, `w ∈ pred(u)` iff
//! `u ∈ pred(w)`.

use rayon::prelude::*;

use crate::border::{BorderIndex, NOT_BORDER};
use crate::graph::{CommunityAssignment, UndirectedGraph};
use crate::parallel::{exclusive_scan, split_at_offsets, CHUNK};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredecessorGraph {
    pred_offsets: Vec<usize>,
    pred_lists: Vec<u32>,
}

impl PredecessorGraph {
    pub fn border_count(&self) -> usize {
        self.pred_offsets.len() - 1
    }

    /// Border-local predecessors of border vertex `j`, ascending.
    #[inline]
    pub fn predecessors(&self, j: u32) -> &[u32] {
        let j = j as usize;
        &self.pred_lists[self.pred_offsets[j]..self.pred_offsets[j + 1]]
    }

    /// Total number of stored directed edges.
    pub fn entry_count(&self) -> usize {
        self.pred_lists.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.pred_offsets
    }
}

/// Builds predecessor lists by count, exclusive scan and fill.
///
/// Edges touching non-target communities are kept; the scorer decides what
/// to skip.
pub fn build_predecessor_graph(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    border: &BorderIndex,
) -> PredecessorGraph {
    let local = border.local_ids();
    let count = |j: usize| -> usize {
        let u = border.global(j as u32);
        let cu = communities.community(u);
        graph
            .neighbors(u)
            .iter()
            .filter(|&&x| local[x as usize] != NOT_BORDER && communities.community(x) != cu)
            .count()
    };

    let counts: Vec<usize> = (0..border.len())
        .into_par_iter()
        .with_min_len(CHUNK / 4)
        .map(count)
        .collect();
    let pred_offsets = exclusive_scan(&counts);

    let mut pred_lists = vec![0u32; pred_offsets[border.len()]];
    split_at_offsets(&mut pred_lists, &pred_offsets)
        .into_par_iter()
        .enumerate()
        .with_min_len(CHUNK / 4)
        .for_each(|(j, out)| {
            let u = border.global(j as u32);
            let cu = communities.community(u);
            let mut next = 0;
            // ascending global IDs map to ascending local IDs
            for &x in graph.neighbors(u) {
                let lx = local[x as usize];
                if lx != NOT_BORDER && communities.community(x) != cu {
                    out[next] = lx;
                    next += 1;
                }
            }
        });

    PredecessorGraph {
        pred_offsets,
        pred_lists,
    }
}
