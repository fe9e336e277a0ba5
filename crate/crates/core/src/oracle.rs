//! Direct reference implementation of the index for small graphs.
//!
//! Everything here is computed from the raw graph and community labels by
//! plain enumeration: neighbor frequency tables, entropies summed term by
//! term, triads found by nested neighbor loops. None of the pipeline's data
//! structures are used, so agreement between the two is meaningful.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{CommunityAssignment, CommunityId, TargetSet, UndirectedGraph, VertexId};
use crate::rsi::RsiScores;

/// How the diversity multiplier `|L|` of a weight is counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WeightRule {
    /// `|L| = (observed target communities) − 1`, uniformly per vertex.
    #[default]
    ObservedMinusOne,
    /// `|L|` = observed target communities other than the head's community,
    /// with weights kept only when `|L| > 1`.
    ExcludeHead,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriadKind {
    /// Closed triangle over three distinct communities.
    Closed,
    /// Open triad whose non-adjacent pair shares a community (augmented edge).
    Open,
}

/// A valid triad `(head, apex, mid)`: `apex` is a foreign neighbor of
/// `head`, and `mid` is a neighbor of `apex` outside `apex`'s community.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriadRecord {
    pub head: VertexId,
    pub mid: VertexId,
    pub apex: VertexId,
    pub kind: TriadKind,
}

fn is_border(graph: &UndirectedGraph, communities: &CommunityAssignment, v: VertexId) -> bool {
    graph
        .neighbors(v)
        .iter()
        .any(|&x| communities.community(x) != communities.community(v))
}

/// Unnormalized weight of any edge from `v` into `head_community`.
pub fn oracle_weight(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    v: VertexId,
    head_community: CommunityId,
) -> f64 {
    oracle_weight_with_rule(graph, communities, targets, v, head_community, WeightRule::default())
}

pub fn oracle_weight_with_rule(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    v: VertexId,
    head_community: CommunityId,
    rule: WeightRule,
) -> f64 {
    let mut freq: BTreeMap<CommunityId, u64> = BTreeMap::new();
    for &x in graph.neighbors(v) {
        let c = communities.community(x);
        if targets.contains(c) {
            *freq.entry(c).or_insert(0) += 1;
        }
    }
    let others: Vec<u64> = freq
        .iter()
        .filter(|(&c, _)| c != head_community)
        .map(|(_, &f)| f)
        .collect();
    let diversity = match rule {
        WeightRule::ObservedMinusOne => {
            if freq.len() < 2 {
                return 0.0;
            }
            freq.len() - 1
        }
        WeightRule::ExcludeHead => {
            if others.len() < 2 {
                return 0.0;
            }
            others.len()
        }
    };
    let y: u64 = others.iter().sum();
    if y == 0 {
        return 0.0;
    }
    let mut entropy = 0.0;
    for &f in &others {
        let p = f as f64 / y as f64;
        entropy -= p * p.log2();
    }
    entropy * diversity as f64
}

/// Every valid triad headed by `u`, over all communities.
pub fn enumerate_valid_triads(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    u: VertexId,
) -> Vec<TriadRecord> {
    let comm_u = communities.community(u);
    let mut out = Vec::new();
    for &w in graph.neighbors(u) {
        let comm_w = communities.community(w);
        if comm_w == comm_u {
            continue;
        }
        for &v in graph.neighbors(w) {
            let comm_v = communities.community(v);
            if v == u || comm_v == comm_w {
                continue;
            }
            let kind = if comm_v == comm_u {
                TriadKind::Open
            } else if graph.neighbors(u).contains(&v) {
                TriadKind::Closed
            } else {
                continue;
            };
            out.push(TriadRecord {
                head: u,
                mid: v,
                apex: w,
                kind,
            });
        }
    }
    out
}

pub fn oracle_rsi(graph: &UndirectedGraph, communities: &CommunityAssignment, targets: &TargetSet) -> RsiScores {
    oracle_rsi_with_rule(graph, communities, targets, WeightRule::default())
}

/// Index of every vertex by direct enumeration. Weights are normalized by
/// the maximum over every (border vertex, target community) pair.
pub fn oracle_rsi_with_rule(
    graph: &UndirectedGraph,
    communities: &CommunityAssignment,
    targets: &TargetSet,
    rule: WeightRule,
) -> RsiScores {
    let mut weights: HashMap<(VertexId, CommunityId), f64> = HashMap::new();
    for v in graph.vertices() {
        if is_border(graph, communities, v) {
            for &c in targets.targets() {
                let w = oracle_weight_with_rule(graph, communities, targets, v, c, rule);
                weights.insert((v, c), w);
            }
        }
    }
    let omega_max = weights.values().copied().fold(0.0f64, f64::max);

    let mut scores = vec![0.0; graph.vertex_count()];
    if omega_max == 0.0 {
        return RsiScores::new(scores);
    }
    let weight = |v: VertexId, c: CommunityId| weights.get(&(v, c)).map(|w| w / omega_max);

    for u in graph.vertices() {
        let comm_u = communities.community(u);
        let d = graph.degree(u);
        if d < 2 || !targets.contains(comm_u) || !is_border(graph, communities, u) {
            continue;
        }
        let mut sum = 0.0;
        for t in enumerate_valid_triads(graph, communities, u) {
            let comm_v = communities.community(t.mid);
            if !targets.contains(comm_v) {
                continue;
            }
            let (Some(a), Some(b), Some(c)) = (weight(t.mid, comm_u), weight(t.apex, comm_v), weight(t.apex, comm_u))
            else {
                continue;
            };
            let product = a * b * c;
            if product > 0.0 {
                sum += product.cbrt();
            }
        }
        scores[u as usize] = sum / (d as f64 * (d as f64 - 1.0));
    }
    RsiScores::new(scores)
}
