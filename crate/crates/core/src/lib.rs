//! Robust spanner detection for community-structured social networks.
//!
//! The scoring pipeline runs in four phases over an undirected CSR graph and a
//! vertex→community assignment:
//!
//! 1. [`border`]: find community-border vertices and build the compact index.
//! 2. [`weights`]: count neighbor communities per border vertex, turn the
//!    counts into entropy weights and normalize them.
//! 3. [`subgraph`]: materialize the inter-community border subgraph as
//!    predecessor lists.
//! 4. [`rsi`]: detect closed and open (augmented) triads by sorted-list
//!    intersection and accumulate the Robust Spanning Index.
//!
//! [`pipeline::score`] runs all of them. [`oracle`] is a slow, direct
//! reference used for equivalence testing, and [`evaluation`] contains the
//! robustness and spanning-quality metrics.

pub mod border;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod io;
pub mod oracle;
mod parallel;
pub mod pipeline;
pub mod rsi;
pub mod subgraph;
pub mod synthetic;
pub mod weights;

pub use border::{find_border_vertices, BorderIndex};
pub use error::{Error, Result};
pub use graph::{
    parse_community_file, parse_edge_list, select_target_communities, BuildSummary, CommunityAssignment, CommunityId,
    TargetSet, TargetSpec, UndirectedGraph, VertexId,
};
pub use pipeline::{score, ScoreRun};
pub use rsi::{compute_rsi, top_k, RankedSpanners, RsiScores};
pub use subgraph::{build_predecessor_graph, PredecessorGraph};
pub use weights::{compute_weights, count_neighbor_communities, normalize_weights, InteractionMatrix};
