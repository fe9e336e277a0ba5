//! Spanning-quality and robustness metrics.
//!
//! * [`robustness`]: AWCC, absolute AWCC under disruption, and incremental
//!   random-removal simulation.
//! * [`diffusion`]: independent cascade / linear threshold spreading and the
//!   structural hole influence index.
//! * [`bounds`]: border-vertex probability bounds for planted communities.
//!
//! Every Monte-Carlo trial draws from its own ChaCha stream, selected by the
//! trial index, so results do not depend on scheduling.

pub mod bounds;
pub mod diffusion;
pub mod robustness;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexId;

pub use bounds::border_probability_bounds;
pub use diffusion::{
    diffuse, independent_cascade, influence_share, linear_threshold, set_shii, shii, DiffusionConfig, DiffusionModel,
    ShiiEstimate,
};
pub use robustness::{
    absolute_awcc, awcc, simulate_removal, DisruptionState, RemovalMode, RemovalSchedule, RobustnessPoint,
};

/// Independent random stream number `stream` of the generator seeded by `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `k` distinct vertices drawn uniformly from `pool` (all of them if the
/// pool is smaller), in ascending order.
pub fn sample_vertices(pool: &[VertexId], k: usize, seed: u64) -> Vec<VertexId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<VertexId> = pool.choose_multiple(&mut rng, k).copied().collect();
    out.sort_unstable();
    out
}

/// Sample mean and standard error of the mean (0 for a single sample).
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}
