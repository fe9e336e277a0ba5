//! Community-border detection and the compact border index.

use rayon::prelude::*;

use crate::graph::{CommunityAssignment, UndirectedGraph, VertexId};
use crate::parallel::{exclusive_scan, split_at_offsets, CHUNK};

/// Marker stored in `bv_local` for vertices that are not border vertices.
pub const NOT_BORDER: u32 = u32::MAX;

/// Bidirectional map between global vertex IDs and compact border IDs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderIndex {
    bv: Vec<VertexId>,
    bv_local: Vec<u32>,
}

impl BorderIndex {
    /// Border vertices in ascending global ID order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.bv
    }

    pub fn len(&self) -> usize {
        self.bv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bv.is_empty()
    }

    #[inline]
    pub fn global(&self, local: u32) -> VertexId {
        self.bv[local as usize]
    }

    #[inline]
    pub fn local(&self, v: VertexId) -> Option<u32> {
        match self.bv_local[v as usize] {
            NOT_BORDER => None,
            j => Some(j),
        }
    }

    /// Raw global→local array, [`NOT_BORDER`] for non-border vertices.
    pub fn local_ids(&self) -> &[u32] {
        &self.bv_local
    }

    pub fn is_border(&self, v: VertexId) -> bool {
        self.bv_local[v as usize] != NOT_BORDER
    }
}

#[inline]
fn is_border(graph: &UndirectedGraph, communities: &CommunityAssignment, u: VertexId) -> bool {
    let cu = communities.community(u);
    graph.neighbors(u).iter().any(|&x| communities.community(x) != cu)
}

/// Finds every vertex with at least one neighbor in a different community.
///
/// All communities participate, targeted or not. The output order is
/// ascending global ID for any thread count.
pub fn find_border_vertices(graph: &UndirectedGraph, communities: &CommunityAssignment) -> BorderIndex {
    let n = graph.vertex_count();
    let flags: Vec<bool> = (0..n as VertexId)
        .into_par_iter()
        .with_min_len(CHUNK)
        .map(|u| is_border(graph, communities, u))
        .collect();

    let counts: Vec<usize> = flags
        .par_chunks(CHUNK)
        .map(|c| c.iter().filter(|&&f| f).count())
        .collect();
    let offsets = exclusive_scan(&counts);

    let mut bv = vec![0 as VertexId; offsets[counts.len()]];
    let mut bv_local = vec![NOT_BORDER; n];
    let bv_parts = split_at_offsets(&mut bv, &offsets);
    bv_parts
        .into_par_iter()
        .zip(bv_local.par_chunks_mut(CHUNK))
        .zip(flags.par_chunks(CHUNK))
        .enumerate()
        .for_each(|(chunk, ((out, local), flags))| {
            let base_vertex = chunk * CHUNK;
            let mut next = 0usize;
            for (i, &flag) in flags.iter().enumerate() {
                if flag {
                    out[next] = (base_vertex + i) as VertexId;
                    local[i] = (offsets[chunk] + next) as u32;
                    next += 1;
                }
            }
        });

    BorderIndex { bv, bv_local }
}
