use robust_spanners::evaluation::{
    absolute_awcc, awcc, set_shii, shii, simulate_removal, DiffusionConfig, DiffusionModel, DisruptionState,
    RemovalMode, RemovalSchedule,
};
use robust_spanners::synthetic::PlantedPartition;
use robust_spanners::{CommunityAssignment, UndirectedGraph};

fn planted() -> (UndirectedGraph, CommunityAssignment) {
    PlantedPartition {
        sizes: vec![40, 50, 60],
        p_in: 0.15,
        p_out: 0.02,
        seed: 3,
    }
    .generate()
    .unwrap()
}

#[test]
fn removal_curve_starts_at_intact_awcc_and_is_reproducible() {
    let (g, c) = planted();
    let set: Vec<u32> = (0..20).collect();
    let intact = awcc(&g, &c, &set).unwrap();
    for mode in [RemovalMode::Edge, RemovalMode::Node] {
        let schedule = RemovalSchedule {
            trials: 5,
            rng_seed: 9,
            ..RemovalSchedule::new(mode)
        };
        let a = simulate_removal(&g, &c, &set, &schedule).unwrap();
        let b = simulate_removal(&g, &c, &set, &schedule).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        assert_eq!(a[0].fraction, 0.0);
        assert!((a[0].mean_awcc - intact).abs() < 1e-12);
        assert_eq!(a[0].stderr, 0.0);
        assert!(a.last().unwrap().mean_awcc < intact);
    }
}

#[test]
fn absolute_awcc_without_disruption_equals_awcc() {
    let (g, c) = planted();
    let set: Vec<u32> = (30..70).collect();
    let intact = DisruptionState::new(&g);
    assert_eq!(
        absolute_awcc(&g, &c, &set, &intact).unwrap(),
        awcc(&g, &c, &set).unwrap()
    );
}

#[test]
fn shii_is_seeded_and_bounded() {
    let (g, c) = planted();
    for model in [DiffusionModel::IndependentCascade, DiffusionModel::LinearThreshold] {
        let config = DiffusionConfig {
            monte_carlo_runs: 200,
            rng_seed: 5,
            ..DiffusionConfig::new(model)
        };
        let a = shii(&g, &c, 7, &config).unwrap();
        let b = shii(&g, &c, 7, &config).unwrap();
        assert_eq!(a, b);
        assert!((0.0..=1.0).contains(&a.mean));

        let (per_seed, mean) = set_shii(&g, &c, &[1, 2, 3], &config).unwrap();
        assert_eq!(per_seed.len(), 3);
        assert!((mean - per_seed.iter().map(|e| e.mean).sum::<f64>() / 3.0).abs() < 1e-15);
    }
}

#[test]
fn ic_with_certain_activation_floods_the_component() {
    // path 0-1-2 across two communities; isolated 3
    let g = UndirectedGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap().0;
    let c = CommunityAssignment::from_vec(vec![1, 1, 2, 2]);
    let config = DiffusionConfig {
        ic_probability: 1.0,
        monte_carlo_runs: 10,
        ..DiffusionConfig::new(DiffusionModel::IndependentCascade)
    };
    let est = shii(&g, &c, 0, &config).unwrap();
    assert!((est.mean - 1.0 / 3.0).abs() < 1e-15);
    assert!(est.stderr < 1e-12);
}
