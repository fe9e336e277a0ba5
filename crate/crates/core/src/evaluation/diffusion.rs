//! Information diffusion and the structural hole influence index (SHII).

use std::collections::VecDeque;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{mean_and_stderr, trial_rng};
use crate::error::{Error, Result};
use crate::graph::{CommunityAssignment, UndirectedGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiffusionModel {
    IndependentCascade,
    LinearThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionConfig {
    pub model: DiffusionModel,
    /// Activation probability per link; independent cascade only.
    pub ic_probability: f64,
    pub monte_carlo_runs: usize,
    pub rng_seed: u64,
}

impl DiffusionConfig {
    pub fn new(model: DiffusionModel) -> Self {
        Self {
            model,
            ic_probability: 0.1,
            monte_carlo_runs: 1000,
            rng_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.ic_probability) {
            return Err(Error::InvalidParameter(format!(
                "activation probability {} not in [0, 1]",
                self.ic_probability
            )));
        }
        if self.monte_carlo_runs == 0 {
            return Err(Error::InvalidParameter("need at least one Monte-Carlo run".into()));
        }
        Ok(())
    }
}

/// Independent cascade: every newly active vertex gets one chance to
/// activate each inactive neighbor with probability `p`. Returns vertices in
/// activation order, seed first.
pub fn independent_cascade<R: Rng>(graph: &UndirectedGraph, seed: VertexId, p: f64, rng: &mut R) -> Vec<VertexId> {
    let mut active = vec![false; graph.vertex_count()];
    active[seed as usize] = true;
    let mut order = vec![seed];
    let mut next = 0;
    while next < order.len() {
        let u = order[next];
        next += 1;
        for &x in graph.neighbors(u) {
            if !active[x as usize] && rng.random::<f64>() < p {
                active[x as usize] = true;
                order.push(x);
            }
        }
    }
    order
}

/// Linear threshold with explicit thresholds: an inactive vertex activates
/// once the fraction of its active neighbors reaches its threshold.
pub fn linear_threshold(graph: &UndirectedGraph, seed: VertexId, thresholds: &[f64]) -> Vec<VertexId> {
    let n = graph.vertex_count();
    let mut active = vec![false; n];
    let mut active_neighbors = vec![0usize; n];
    let mut queue = VecDeque::from([seed]);
    active[seed as usize] = true;
    let mut order = vec![seed];
    while let Some(u) = queue.pop_front() {
        for &x in graph.neighbors(u) {
            let xi = x as usize;
            if active[xi] {
                continue;
            }
            active_neighbors[xi] += 1;
            if active_neighbors[xi] as f64 / graph.degree(x) as f64 >= thresholds[xi] {
                active[xi] = true;
                order.push(x);
                queue.push_back(x);
            }
        }
    }
    order
}

/// One diffusion run from `seed`. Linear threshold draws fresh uniform
/// thresholds for every vertex from `rng`.
pub fn diffuse<R: Rng>(
    graph: &UndirectedGraph,
    seed: VertexId,
    config: &DiffusionConfig,
    rng: &mut R,
) -> Vec<VertexId> {
    match config.model {
        DiffusionModel::IndependentCascade => independent_cascade(graph, seed, config.ic_probability, rng),
        DiffusionModel::LinearThreshold => {
            let thresholds: Vec<f64> = (0..graph.vertex_count()).map(|_| rng.random()).collect();
            linear_threshold(graph, seed, &thresholds)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiiEstimate {
    pub vertex: VertexId,
    pub mean: f64,
    pub stderr: f64,
}

/// Share of influenced vertices that lie outside the seed's community.
pub fn influence_share(communities: &CommunityAssignment, seed: VertexId, influenced: &[VertexId]) -> f64 {
    let home = communities.community(seed);
    let outside = influenced.iter().filter(|&&v| communities.community(v) != home).count();
    outside as f64 / influenced.len() as f64
}

/// Monte-Carlo SHII of a single seed vertex. Run `r` uses random stream `r`.
pub fn shii(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    seed: VertexId,
    config: &DiffusionConfig,
) -> Result<ShiiEstimate> {
    config.validate()?;
    if seed as usize >= graph.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: seed as u64,
            vertex_count: graph.vertex_count(),
        });
    }
    let shares: Vec<f64> = (0..config.monte_carlo_runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = trial_rng(config.rng_seed, run as u64);
            let influenced = diffuse(graph, seed, config, &mut rng);
            influence_share(communities, seed, &influenced)
        })
        .collect();
    let (mean, stderr) = mean_and_stderr(&shares);
    Ok(ShiiEstimate {
        vertex: seed,
        mean,
        stderr,
    })
}

/// SHII of each seed and the mean over the set.
pub fn set_shii(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    seeds: &[VertexId],
    config: &DiffusionConfig,
) -> Result<(Vec<ShiiEstimate>, f64)> {
    if seeds.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let per_seed = seeds
        .iter()
        .map(|&s| shii(graph, communities, s, config))
        .collect::<Result<Vec<_>>>()?;
    let mean = per_seed.iter().map(|e| e.mean).sum::<f64>() / per_seed.len() as f64;
    Ok((per_seed, mean))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Star centred on 0 (community 1) with leaves in {2, 2, 1}, plus a
    /// detached edge 4-5.
    fn star() -> (UndirectedGraph, CommunityAssignment) {
        let g = UndirectedGraph::from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 5)])
            .unwrap()
            .0;
        let c = CommunityAssignment::from_vec(vec![1, 2, 2, 1, 2, 2]);
        (g, c)
    }

    fn sorted(mut v: Vec<VertexId>) -> Vec<VertexId> {
        v.sort_unstable();
        v
    }

    #[test]
    fn cascade_extremes() {
        let (g, _) = star();
        let mut rng = trial_rng(1, 0);
        assert_eq!(independent_cascade(&g, 0, 0.0, &mut rng), vec![0]);
        assert_eq!(sorted(independent_cascade(&g, 1, 1.0, &mut rng)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn zero_threshold_activates_on_first_active_neighbor() {
        let (g, _) = star();
        let mut thresholds = vec![1.5; 6];
        thresholds[2] = 0.0;
        assert_eq!(linear_threshold(&g, 0, &thresholds), vec![0, 2]);
        // leaves have degree 1, so a threshold of 1 is met as well
        assert_eq!(
            sorted(linear_threshold(&g, 1, &[0.3, 1.0, 1.0, 2.0, 0.0, 0.0])),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn shii_examples() {
        let (g, c) = star();
        let mut config = DiffusionConfig::new(DiffusionModel::IndependentCascade);
        config.ic_probability = 1.0;
        config.monte_carlo_runs = 5;
        let e = shii(&g, &c, 0, &config).unwrap();
        assert_eq!(e.mean, 0.5);
        assert_eq!(e.stderr, 0.0);

        config.ic_probability = 0.0;
        assert_eq!(shii(&g, &c, 0, &config).unwrap().mean, 0.0);

        let (_, set_mean) = set_shii(
            &g,
            &c,
            &[0, 4],
            &DiffusionConfig {
                ic_probability: 1.0,
                ..config
            },
        )
        .unwrap();
        assert_eq!(set_mean, 0.25);
    }

    #[test]
    fn shii_is_reproducible_and_bounded() {
        let (g, c) = star();
        for model in [DiffusionModel::IndependentCascade, DiffusionModel::LinearThreshold] {
            let config = DiffusionConfig {
                model,
                ic_probability: 0.5,
                monte_carlo_runs: 200,
                rng_seed: 11,
            };
            let a = shii(&g, &c, 0, &config).unwrap();
            assert_eq!(a, shii(&g, &c, 0, &config).unwrap());
            assert!((0.0..=1.0).contains(&a.mean));
        }
    }

    #[test]
    fn rejects_bad_config() {
        let (g, c) = star();
        let mut config = DiffusionConfig::new(DiffusionModel::IndependentCascade);
        config.ic_probability = 2.0;
        assert!(shii(&g, &c, 0, &config).is_err());
        config.ic_probability = 0.1;
        config.monte_carlo_runs = 0;
        assert!(shii(&g, &c, 0, &config).is_err());
        assert!(set_shii(&g, &c, &[], &DiffusionConfig::new(DiffusionModel::LinearThreshold)).is_err());
    }
}
