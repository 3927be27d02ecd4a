use hybrid_trust::{run_alpha_sweep, run_trust_variation, GridConfig, SweepConfig, SweepResult, VariationConfig};

fn sweep(alphas: Vec<f64>, degree_targets: Vec<f64>, distrusted_fraction: f64, replicates: u32) -> SweepResult {
    let cfg = SweepConfig {
        grid: GridConfig {
            distrusted_fraction,
            ..GridConfig::default()
        },
        alphas,
        degree_targets,
        replicates,
        master_seed: 11,
        ..SweepConfig::default()
    };
    run_alpha_sweep::<f64>(&cfg, None).unwrap()
}

#[test]
fn more_liars_hurt_pure_voting() {
    let few = sweep(vec![0.0], vec![6.5, 2.2], 0.2, 60);
    let many = sweep(vec![0.0], vec![6.5, 2.2], 0.4, 60);
    for (a, b) in few.cells.iter().zip(&many.cells) {
        assert!(b.mean_failure_rate >= a.mean_failure_rate, "{a:?} vs {b:?}");
    }
}

#[test]
fn mixing_beats_either_extreme_on_sparse_grids() {
    let res = sweep(vec![0.0, 0.4, 0.5, 0.6, 1.0], vec![2.2], 0.2, 100);
    let f = |a: f64| res.cell(a, 2.2).unwrap().mean_failure_rate;
    for a in [0.4, 0.5, 0.6] {
        assert!(f(a) < f(0.0) && f(a) < f(1.0), "alpha {a}: {}", f(a));
    }
}

#[test]
fn realized_degree_tracks_target() {
    let res = sweep(vec![1.0], vec![6.5, 4.0, 2.2], 0.2, 5);
    for c in &res.cells {
        // keep = floor(target * 225 / 2) pairs
        let expected = 2.0 * (c.degree_target * 225.0 / 2.0).floor() / 225.0;
        assert!((c.mean_realized_degree - expected).abs() < 1e-12);
    }
}

#[test]
fn variation_recommended_never_below_direct() {
    for steps in [1, 2, 10, 37] {
        let cfg = VariationConfig {
            steps,
            ..VariationConfig::default()
        };
        let s = run_trust_variation::<f64>(&cfg).unwrap();
        assert_eq!(s.len(), steps as usize);
        for st in &s {
            let (t1, c) = (st.t1.value(), 1.0 / st.tau.value());
            assert!(st.cost_recommended >= st.cost_direct);
            assert!((st.cost_recommended - st.cost_direct - c * (1.0 - t1) / t1).abs() < 1e-9);
            assert_eq!(st.cost_recommended == st.cost_direct, t1 == 1.0);
        }
    }
}
