use proptest::prelude::*;

use robust_spanners::oracle::{oracle_rsi, oracle_rsi_with_rule, WeightRule};
use robust_spanners::synthetic::PlantedPartition;
use robust_spanners::{
    find_border_vertices, score, select_target_communities, top_k, CommunityAssignment, TargetSpec, UndirectedGraph,
};

fn instance() -> impl Strategy<Value = (UndirectedGraph, CommunityAssignment, usize)> {
    (4usize..40, 2u32..6).prop_flat_map(|(n, c)| {
        let edges = prop::collection::vec((0..n as u32, 0..n as u32), 0..n * 4);
        let labels = prop::collection::vec(0..c, n);
        (edges, labels, 2usize..=c as usize).prop_filter_map("needs two communities", move |(edges, labels, k)| {
            let comm = CommunityAssignment::from_vec(labels);
            if comm.community_count() < 2 {
                return None;
            }
            let g = UndirectedGraph::from_edges(n, edges).ok()?.0;
            Some((g, comm, k))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_oracle((g, c, k) in instance()) {
        let t = select_target_communities(&c, &TargetSpec::TopBySize(k.min(c.community_count()))).unwrap();
        let fast = score(&g, &c, &t).scores;
        let slow = oracle_rsi(&g, &c, &t);
        for (a, b) in fast.as_slice().iter().zip(slow.as_slice()) {
            prop_assert!((a - b).abs() <= (1e-9 * b.abs()).max(1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn rerun_is_bitwise_identical((g, c, k) in instance()) {
        let t = select_target_communities(&c, &TargetSpec::TopBySize(k.min(c.community_count()))).unwrap();
        let a = score(&g, &c, &t).scores;
        let b = score(&g, &c, &t).scores;
        let bits = |s: &[f64]| s.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(a.as_slice()), bits(b.as_slice()));
    }

    #[test]
    fn non_border_and_untargeted_vertices_score_zero((g, c, k) in instance()) {
        let t = select_target_communities(&c, &TargetSpec::TopBySize(k.min(c.community_count()))).unwrap();
        let run = score(&g, &c, &t);
        for v in g.vertices() {
            let s = run.scores.get(v);
            prop_assert!(s >= 0.0 && s.is_finite());
            if !run.border.is_border(v) || !t.contains(c.community(v)) || g.degree(v) < 2 {
                prop_assert_eq!(s, 0.0);
            }
        }
    }

    #[test]
    fn isolated_vertex_changes_nothing((g, c, k) in instance()) {
        let t = select_target_communities(&c, &TargetSpec::TopBySize(k.min(c.community_count()))).unwrap();
        let base = score(&g, &c, &t).scores;

        let extra = g.vertex_count() as u32;
        let g2 = UndirectedGraph::from_edges(g.vertex_count() + 1, g.edges()).unwrap().0;
        let mut labels = c.as_slice().to_vec();
        labels.push(c.community(0));
        let c2 = CommunityAssignment::from_vec(labels);
        let t2 = select_target_communities(&c2, &TargetSpec::Explicit(t.targets().to_vec())).unwrap();
        let grown = score(&g2, &c2, &t2).scores;
        prop_assert_eq!(grown.get(extra), 0.0);
        for v in g.vertices() {
            prop_assert_eq!(grown.get(v).to_bits(), base.get(v).to_bits());
        }
    }
}

#[test]
fn planted_partition_top_spanners_are_border_vertices() {
    let (g, c) = PlantedPartition {
        sizes: vec![60, 80, 100],
        p_in: 0.1,
        p_out: 0.01,
        seed: 11,
    }
    .generate()
    .unwrap();
    let t = select_target_communities(&c, &TargetSpec::TopBySize(3)).unwrap();
    let run = score(&g, &c, &t);
    let border = find_border_vertices(&g, &c);
    let ranked = top_k(&run.scores, 10);
    assert_eq!(ranked.entries.len(), 10);
    assert!(ranked
        .entries
        .iter()
        .all(|e| border.is_border(e.vertex) && e.score > 0.0));
    assert!(ranked.entries.windows(2).all(|w| w[0].score >= w[1].score));
}

#[test]
fn weight_rules_agree_when_head_community_is_observed() {
    // every border vertex of a complete 3-partite graph sees all targets
    let n = 9;
    let labels: Vec<u32> = (0..n).map(|v| v % 3).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if labels[u as usize] != labels[v as usize] {
                edges.push((u, v));
            }
        }
    }
    let g = UndirectedGraph::from_edges(n as usize, edges).unwrap().0;
    let c = CommunityAssignment::from_vec(labels);
    let t = select_target_communities(&c, &TargetSpec::TopBySize(3)).unwrap();
    assert_eq!(
        oracle_rsi(&g, &c, &t).as_slice(),
        oracle_rsi_with_rule(&g, &c, &t, WeightRule::ExcludeHead).as_slice()
    );
}
