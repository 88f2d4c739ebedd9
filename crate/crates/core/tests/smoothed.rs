use cutlab_core::smoothed::{
    claim17_check, cubic_bench, experiment, normalize, perturb, random_bounded_degree_graph, run_trial, summarize,
    Claim17Params, CubicConfig, ExperimentConfig, SmoothedError,
};
use cutlab_core::graph::max_degree;
use cutlab_core::{BigInt, Graph, PivotRule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn one_edge() -> Graph {
    Graph::from_edges(2, [(0, 1, BigInt::from(7))]).unwrap()
}

#[test]
fn perturbation_mean_is_zero() {
    let rg = normalize(&one_edge()).unwrap();
    let sigma = 0.3;
    let trials = 100_000;
    let mean: f64 = (0..trials).map(|s| perturb(&rg, sigma, s).unwrap().graph.edge(0).w - 1.0).sum::<f64>() / trials as f64;
    assert!(mean.abs() <= 4.0 * sigma / (trials as f64).sqrt(), "mean {mean}");
}

#[test]
fn tiny_sigma_keeps_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rg = normalize(&random_bounded_degree_graph(&mut rng, 20, 4, 100)).unwrap();
    let p = perturb(&rg, 1e-12, 9).unwrap();
    for (a, b) in rg.graph.edges().iter().zip(p.graph.edges()) {
        assert!((a.w - b.w).abs() < 1e-10);
    }
}

#[test]
fn log_degree_trial_converges() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = random_bounded_degree_graph(&mut rng, 64, 12, 1000);
    assert!(max_degree(&g) <= 12);
    let t = run_trial(&normalize(&g).unwrap(), 0.1, 5, PivotRule::Best).unwrap();
    assert!(t.converged);
    assert!(t.steps > 0);
    assert!(t.min_gain.unwrap() > 0.0);
    assert!(!t.degree_warning);
}

#[test]
fn experiment_is_reproducible_and_recomputable() {
    let cfg = ExperimentConfig {
        sizes: vec![32, 64],
        sigmas: vec![0.05, 0.1, 0.2],
        trials: 8,
        rules: vec![PivotRule::First, PivotRule::Random],
        seed: 42,
        ..Default::default()
    };
    let a = experiment(&cfg).unwrap();
    let b = experiment(&cfg).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.trials.len(), 2 * 3 * 2 * 8);
    assert_eq!(a.aggregates.len(), 2 * 3 * 2);
    assert!(a.checks.median_monotone_in_sigma.is_some());
    assert!(a.fits.n_exponent.is_some() && a.fits.sigma_exponent.is_some());
    assert_eq!(summarize(cfg.clone(), a.trials.clone()), a);
    let other = experiment(&ExperimentConfig { seed: 43, ..cfg }).unwrap();
    assert_ne!(other.trials, a.trials);
}

#[test]
fn experiment_errors() {
    let cfg = ExperimentConfig::default();
    assert_eq!(experiment(&ExperimentConfig { sizes: vec![], ..cfg.clone() }), Err(SmoothedError::Empty("sizes")));
    assert_eq!(experiment(&ExperimentConfig { sizes: vec![1], ..cfg.clone() }), Err(SmoothedError::Size(1)));
    assert_eq!(experiment(&ExperimentConfig { sigmas: vec![1.5], ..cfg }), Err(SmoothedError::Sigma(1.5)));
}

#[test]
fn claim17_four_levels() {
    let r = claim17_check(&Claim17Params {
        k: 4,
        subset: vec![1, 3],
        a: 0.0,
        delta_prime: 0.2,
        sigma: 0.1,
        c: 10.0,
        trials: 100_000,
        seed: 17,
    })
    .unwrap();
    assert_eq!(r.bound, 0.2 / 16.0);
    assert!(r.pass);
    assert!(claim17_check(&Claim17Params { subset: vec![5], ..r.params.clone() }).is_err());
    assert!(claim17_check(&Claim17Params { delta_prime: 1.0, ..r.params }).is_err());
}

#[test]
fn cubic_runs_are_short() {
    let r = cubic_bench(&CubicConfig { sizes: vec![20, 40, 80], starts: 5, seed: 3, ..Default::default() }).unwrap();
    for row in &r.rows {
        assert_eq!(row.steps.len(), 5);
        assert!(row.max_steps <= row.n * row.n);
    }
    assert!(cubic_bench(&CubicConfig { sizes: vec![21, 40], ..Default::default() }).is_err());
}
