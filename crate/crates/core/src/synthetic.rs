//! Planted-partition random graphs.
//!
//! Vertices are numbered community by community. Each intra-community pair
//! is linked with probability `p_in`, each inter-community pair with `p_out`,
//! independently. Pairs are visited with geometric skips, so generation costs
//! O(|V| + |E|) rather than O(|V|²).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, CommunityId, UndirectedGraph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedPartition {
    pub sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

/// Calls `emit(index)` for every index in `0..pairs` selected independently
/// with probability `p`.
fn sample_indices<R: Rng>(pairs: u64, p: f64, rng: &mut R, mut emit: impl FnMut(u64)) {
    if p <= 0.0 || pairs == 0 {
        return;
    }
    if p >= 1.0 {
        (0..pairs).for_each(emit);
        return;
    }
    let skip = Geometric::new(p).expect("probability in (0, 1)");
    let mut idx = skip.sample(rng);
    while idx < pairs {
        emit(idx);
        idx = idx.saturating_add(1).saturating_add(skip.sample(rng));
    }
}

/// Maps a linear index over the strict upper triangle of an `n × n` block
/// (row-major: (0,1), (0,2), …, (1,2), …) to its pair.
fn triangle_pair(idx: u64, n: u64) -> (u64, u64) {
    // row r starts at r·n − r(r+1)/2
    let start = |r: u64| r * n - r * (r + 1) / 2;
    let nf = n as f64;
    let guess = ((2.0 * nf - 1.0 - ((2.0 * nf - 1.0).powi(2) - 8.0 * idx as f64).max(0.0).sqrt()) / 2.0)
        .floor()
        .max(0.0) as u64;
    let mut r = guess.min(n.saturating_sub(2));
    while r > 0 && start(r) > idx {
        r -= 1;
    }
    while r + 1 < n && start(r + 1) <= idx {
        r += 1;
    }
    (r, r + 1 + (idx - start(r)))
}

impl PlantedPartition {
    pub fn generate(&self) -> Result<(UndirectedGraph, CommunityAssignment)> {
        for p in [self.p_in, self.p_out] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("edge probability {p} not in [0, 1]")));
            }
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::InvalidParameter("community sizes must be positive".into()));
        }
        let n: usize = self.sizes.iter().sum();
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidParameter("too many vertices".into()));
        }
        let mut starts = Vec::with_capacity(self.sizes.len());
        let mut community_of = Vec::with_capacity(n);
        for (c, &size) in self.sizes.iter().enumerate() {
            starts.push(community_of.len() as u64);
            community_of.extend(std::iter::repeat_n(c as CommunityId, size));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        for a in 0..self.sizes.len() {
            let (sa, na) = (starts[a], self.sizes[a] as u64);
            sample_indices(na * na.saturating_sub(1) / 2, self.p_in, &mut rng, |idx| {
                let (i, j) = triangle_pair(idx, na);
                edges.push(((sa + i) as VertexId, (sa + j) as VertexId));
            });
            for (&sb, &size_b) in starts.iter().zip(&self.sizes).skip(a + 1) {
                let nb = size_b as u64;
                sample_indices(na * nb, self.p_out, &mut rng, |idx| {
                    edges.push(((sa + idx / nb) as VertexId, (sb + idx % nb) as VertexId));
                });
            }
        }
        let (graph, _) = UndirectedGraph::from_edges(n, edges)?;
        Ok((graph, CommunityAssignment::from_vec(community_of)))
    }
}
