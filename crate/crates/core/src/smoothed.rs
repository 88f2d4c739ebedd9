//! Smoothed-analysis experiments: Gaussian perturbation of edge weights and
//! FLIP convergence measurements on graphs of logarithmic degree.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flip::{default_step_limit, run_flip, FlipError, PivotRule};
use crate::graph::{cut_weight, max_degree, Graph, GraphError, Partition, Weight, WeightedGraph};

/// Gains at or below this are too close to rounding noise to trust.
pub const TINY_GAIN: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SmoothedError {
    #[error("graph has no edges")]
    Edgeless,
    #[error("sigma must lie in (0, 1), got {0}")]
    Sigma(f64),
    #[error("{0} must be positive")]
    Empty(&'static str),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("subset element {0} is outside 1..=k")]
    Subset(usize),
    #[error("delta' must lie in (0, 1), got {0}")]
    DeltaPrime(f64),
    #[error("size {0} is below 2")]
    Size(usize),
    #[error("cubic graphs need an even n >= 4, got {0}")]
    CubicSize(usize),
    #[error(transparent)]
    Flip(#[from] FlipError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with real weights, divided by the recorded `w_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGraph {
    pub graph: WeightedGraph<f64>,
    pub w_max: f64,
}

pub fn normalize(g: &Graph) -> Result<RealGraph, SmoothedError> {
    let w_max = g.edges().iter().map(|e| &e.w).max().ok_or(SmoothedError::Edgeless)?.clone();
    let wm = w_max.to_f64();
    Ok(RealGraph {
        // exact at w_max itself, so the largest weight is exactly 1
        graph: g.map_weights(|w| if *w == w_max { 1.0 } else { w.to_f64() / wm }),
        w_max: wm,
    })
}

fn check_sigma(sigma: f64) -> Result<(), SmoothedError> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(SmoothedError::Sigma(sigma))
    }
}

/// Adds an independent `N(0, σ²)` draw to every weight, in edge order.
pub fn perturb(rg: &RealGraph, sigma: f64, seed: u64) -> Result<RealGraph, SmoothedError> {
    check_sigma(sigma)?;
    let normal = Normal::new(0.0, sigma).expect("valid sigma");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(RealGraph {
        graph: rg.graph.map_weights(|w| w + normal.sample(&mut rng)),
        w_max: rg.w_max,
    })
}

/// splitmix64 finalizer.
pub fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A seed derived from `master` and a job key.
pub fn derive_seed(master: u64, key: &[u64]) -> u64 {
    key.iter().fold(mix(master), |acc, &k| mix(acc ^ mix(k)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOptions {
    pub tau: f64,
    pub delta: f64,
    /// Warn when the max degree exceeds `⌈factor · log2 n⌉`.
    pub degree_factor: f64,
    pub step_limit: Option<usize>,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions { tau: 0.01, delta: 0.1, degree_factor: 2.0, step_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub sigma: f64,
    pub seed: u64,
    pub rule: PivotRule,
    pub steps: usize,
    /// Smallest gain over all flips, `None` when no flip was made.
    pub min_gain: Option<f64>,
    pub final_cut: f64,
    pub converged: bool,
    /// Flips of `v_i` with gain at most `τ δ σ / (n 2^{d_i})`.
    pub small_gain_flips: usize,
    pub tiny_gain: bool,
    pub degree_warning: bool,
}

pub fn run_trial(rg: &RealGraph, sigma: f64, seed: u64, rule: PivotRule) -> Result<TrialStats, SmoothedError> {
    run_trial_with(rg, sigma, seed, rule, &TrialOptions::default())
}

pub fn run_trial_with(
    rg: &RealGraph,
    sigma: f64,
    seed: u64,
    rule: PivotRule,
    opts: &TrialOptions,
) -> Result<TrialStats, SmoothedError> {
    let g = perturb(rg, sigma, mix(seed ^ 1))?.graph;
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed ^ 2));
    let start = Partition::from_bits((0..n).map(|_| rng.random()).collect());
    let limit = opts.step_limit.unwrap_or_else(|| default_step_limit(&g));
    let trace = run_flip(&g, &start, rule, limit, mix(seed ^ 3))?;
    let d = max_degree(&g);
    let small_gain_flips = trace
        .steps
        .iter()
        .filter(|(v, gain)| {
            let floor = opts.tau * opts.delta * sigma / (n as f64 * 2f64.powi(g.degree(*v) as i32));
            *gain <= floor
        })
        .count();
    let min_gain = trace.min_gain().copied();
    let cap = (opts.degree_factor * (n.max(2) as f64).log2()).ceil() as usize;
    Ok(TrialStats {
        n,
        m: g.edge_count(),
        d,
        sigma,
        seed,
        rule,
        steps: trace.step_count,
        min_gain,
        final_cut: cut_weight(&g, &trace.final_partition)?,
        converged: !trace.reached_limit,
        small_gain_flips,
        tiny_gain: min_gain.is_some_and(|x| x <= TINY_GAIN),
        degree_warning: d > cap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim17Params {
    pub k: usize,
    /// 1-based indices into `1..=k`.
    pub subset: Vec<usize>,
    pub a: f64,
    pub delta_prime: f64,
    pub sigma: f64,
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim17Result {
    pub params: Claim17Params,
    pub hits: usize,
    pub estimate: f64,
    pub bound: f64,
    pub standard_error: f64,
    pub pass: bool,
}

/// Monte-Carlo estimate of `Pr[|Σ_S X_j − Σ_{j∉S} X_j − a| ≤ δ′σ / (c 2^k)]`.
pub fn claim17_check(p: &Claim17Params) -> Result<Claim17Result, SmoothedError> {
    if p.trials == 0 {
        return Err(SmoothedError::Empty("trials"));
    }
    if p.k == 0 {
        return Err(SmoothedError::ZeroK);
    }
    if let Some(&bad) = p.subset.iter().find(|&&j| j == 0 || j > p.k) {
        return Err(SmoothedError::Subset(bad));
    }
    if !(p.delta_prime > 0.0 && p.delta_prime < 1.0) {
        return Err(SmoothedError::DeltaPrime(p.delta_prime));
    }
    if !(p.sigma > 0.0 && p.sigma.is_finite()) {
        return Err(SmoothedError::Sigma(p.sigma));
    }
    let sign: Vec<f64> = (1..=p.k).map(|j| if p.subset.contains(&j) { 1.0 } else { -1.0 }).collect();
    let radius = p.delta_prime * p.sigma / (p.c * 2f64.powi(p.k as i32));
    let normal = Normal::new(0.0, p.sigma).expect("valid sigma");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut hits = 0;
    for _ in 0..p.trials {
        let s: f64 = sign.iter().map(|s| s * normal.sample(&mut rng)).sum();
        if (s - p.a).abs() <= radius {
            hits += 1;
        }
    }
    let estimate = hits as f64 / p.trials as f64;
    let bound = p.delta_prime * 2f64.powi(-(p.k as i32));
    let standard_error = (estimate * (1.0 - estimate) / p.trials as f64).sqrt();
    Ok(Claim17Result {
        params: p.clone(),
        hits,
        estimate,
        bound,
        standard_error,
        pass: estimate <= bound + 3.0 * standard_error,
    })
}

/// Random graph with max degree `d`: edges are drawn uniformly and kept while
/// both ends have spare degree, until `n d / 2` edges or too many misses.
pub fn random_bounded_degree_graph<R: Rng>(rng: &mut R, n: usize, d: usize, max_weight: u64) -> Graph {
    let mut g = Graph::new(n);
    let target = n * d / 2;
    let mut misses = 0;
    while g.edge_count() < target && misses < 50 * target + 100 {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || g.degree(u) >= d || g.degree(v) >= d || g.edge_between(u, v).is_some() {
            misses += 1;
            continue;
        }
        g.add_edge(u, v, BigInt::from(rng.random_range(1..=max_weight))).expect("checked edge");
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq1Constants {
    pub c_prime: f64,
    pub k1: f64,
    pub k2: f64,
}

impl Default for Eq1Constants {
    fn default() -> Self {
        Eq1Constants { c_prime: 1.0, k1: 2.0, k2: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    /// Degree cap `d = ⌈degree_factor · log2 n⌉`.
    pub degree_factor: f64,
    pub sigmas: Vec<f64>,
    pub trials: usize,
    pub rules: Vec<PivotRule>,
    pub seed: u64,
    pub graphs_per_size: usize,
    pub max_weight: u64,
    pub tau: f64,
    pub delta: f64,
    /// Ceiling for the fitted constant of the step bound.
    pub c_max: f64,
    pub eq1: Eq1Constants,
    pub step_limit: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            sizes: vec![64, 128, 256],
            degree_factor: 2.0,
            sigmas: vec![0.1],
            trials: 50,
            rules: vec![PivotRule::Random],
            seed: 0,
            graphs_per_size: 1,
            max_weight: 1000,
            tau: 0.01,
            delta: 0.1,
            c_max: 1.0,
            eq1: Eq1Constants::default(),
            step_limit: None,
        }
    }
}

impl ExperimentConfig {
    pub fn degree_cap(&self, n: usize) -> usize {
        ((self.degree_factor * (n as f64).log2()).ceil() as usize).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAggregate {
    pub n: usize,
    pub sigma: f64,
    pub rule: PivotRule,
    pub d: usize,
    pub trials: usize,
    pub median_steps: f64,
    pub max_steps: usize,
    pub min_gain: Option<f64>,
    pub converged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fits {
    /// `log(median steps) ≈ intercept + n_exponent · log n + sigma_exponent · log(1/σ)`.
    pub intercept: f64,
    pub n_exponent: Option<f64>,
    pub sigma_exponent: Option<f64>,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorCheck {
    pub tau: f64,
    pub delta: f64,
    pub small_flips: usize,
    pub total_flips: usize,
    pub fraction: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepBoundCheck {
    /// `max steps / (n² log² n 2^d / (δσ))` over all trials.
    pub fitted_c: f64,
    pub c_max: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileCheck {
    pub constants: Eq1Constants,
    /// Smallest per-cell fraction of trials below `δ⁻² c′ n^{k1} σ^{-k2}`.
    pub worst_fraction: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub all_converged: bool,
    pub positive_gains: bool,
    pub tiny_gain_trials: usize,
    pub degree_warnings: usize,
    pub floor: FloorCheck,
    pub step_bound: StepBoundCheck,
    pub quantile: QuantileCheck,
    /// Report-only: median steps never increase with σ.
    pub median_monotone_in_sigma: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothedReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialStats>,
    pub aggregates: Vec<CellAggregate>,
    pub fits: Fits,
    pub checks: Checks,
}

struct Job {
    graph: usize,
    sigma: f64,
    rule: PivotRule,
    seed: u64,
}

pub fn experiment(cfg: &ExperimentConfig) -> Result<SmoothedReport, SmoothedError> {
    if cfg.sizes.is_empty() {
        return Err(SmoothedError::Empty("sizes"));
    }
    if cfg.sigmas.is_empty() {
        return Err(SmoothedError::Empty("sigmas"));
    }
    if cfg.rules.is_empty() {
        return Err(SmoothedError::Empty("rules"));
    }
    if cfg.trials == 0 {
        return Err(SmoothedError::Empty("trials"));
    }
    if cfg.graphs_per_size == 0 {
        return Err(SmoothedError::Empty("graphs_per_size"));
    }
    if let Some(&n) = cfg.sizes.iter().find(|&&n| n < 2) {
        return Err(SmoothedError::Size(n));
    }
    for &s in &cfg.sigmas {
        check_sigma(s)?;
    }

    let mut graphs = Vec::new();
    for &n in &cfg.sizes {
        for gi in 0..cfg.graphs_per_size {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[n as u64, gi as u64]));
            let g = random_bounded_degree_graph(&mut rng, n, cfg.degree_cap(n), cfg.max_weight);
            graphs.push(normalize(&g)?);
        }
    }
    let mut jobs = Vec::new();
    for (gi, _) in graphs.iter().enumerate() {
        for (si, &sigma) in cfg.sigmas.iter().enumerate() {
            for (ri, &rule) in cfg.rules.iter().enumerate() {
                for t in 0..cfg.trials {
                    let seed = derive_seed(cfg.seed, &[gi as u64, si as u64, ri as u64, t as u64]);
                    jobs.push(Job { graph: gi, sigma, rule, seed });
                }
            }
        }
    }
    let opts = TrialOptions {
        tau: cfg.tau,
        delta: cfg.delta,
        degree_factor: cfg.degree_factor,
        step_limit: cfg.step_limit,
    };
    let trials = jobs
        .par_iter()
        .map(|j| run_trial_with(&graphs[j.graph], j.sigma, j.seed, j.rule, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(cfg.clone(), trials))
}

fn median(xs: &mut [usize]) -> f64 {
    xs.sort_unstable();
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2] as f64
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) as f64 / 2.0
    }
}

fn aggregate(trials: &[TrialStats]) -> Vec<CellAggregate> {
    let mut keys: Vec<(usize, f64, PivotRule)> = Vec::new();
    for t in trials {
        if !keys.iter().any(|k| k.0 == t.n && k.1 == t.sigma && k.2 == t.rule) {
            keys.push((t.n, t.sigma, t.rule));
        }
    }
    keys.into_iter()
        .map(|(n, sigma, rule)| {
            let cell: Vec<&TrialStats> =
                trials.iter().filter(|t| t.n == n && t.sigma == sigma && t.rule == rule).collect();
            let mut steps: Vec<usize> = cell.iter().map(|t| t.steps).collect();
            CellAggregate {
                n,
                sigma,
                rule,
                d: cell.iter().map(|t| t.d).max().unwrap_or(0),
                trials: cell.len(),
                median_steps: median(&mut steps),
                max_steps: steps.last().copied().unwrap_or(0),
                min_gain: cell.iter().filter_map(|t| t.min_gain).reduce(f64::min),
                converged: cell.iter().filter(|t| t.converged).count(),
            }
        })
        .collect()
}

/// Least squares with an intercept; columns that do not vary are dropped.
fn fit(aggs: &[CellAggregate]) -> Fits {
    let rows: Vec<(f64, f64, f64)> = aggs
        .iter()
        .filter(|a| a.median_steps > 0.0)
        .map(|a| ((a.n as f64).ln(), (1.0 / a.sigma).ln(), a.median_steps.ln()))
        .collect();
    if rows.is_empty() {
        return Fits { intercept: 0.0, n_exponent: None, sigma_exponent: None, points: 0 };
    }
    let use_n = rows.iter().any(|r| (r.0 - rows[0].0).abs() > 1e-12);
    let use_s = rows.iter().any(|r| (r.1 - rows[0].1).abs() > 1e-12);
    let k = 1 + use_n as usize + use_s as usize;
    let mut a = vec![vec![0.0; k + 1]; k];
    for r in &rows {
        let mut x = vec![1.0];
        if use_n {
            x.push(r.0);
        }
        if use_s {
            x.push(r.1);
        }
        for i in 0..k {
            for j in 0..k {
                a[i][j] += x[i] * x[j];
            }
            a[i][k] += x[i] * r.2;
        }
    }
    let beta = solve(a).unwrap_or_else(|| vec![f64::NAN; k]);
    let mut it = beta.into_iter();
    let intercept = it.next().unwrap_or(f64::NAN);
    Fits {
        intercept,
        n_exponent: if use_n { it.next() } else { None },
        sigma_exponent: if use_s { it.next() } else { None },
        points: rows.len(),
    }
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = a[row][col] / a[col][col];
                let pivot = a[col].clone();
                for (x, p) in a[row][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * p;
                }
            }
        }
    }
    Some((0..k).map(|i| a[i][k] / a[i][i]).collect())
}

fn step_scale(n: usize, d: usize, delta: f64, sigma: f64) -> f64 {
    let lg = (n as f64).log2();
    (n as f64).powi(2) * lg * lg * 2f64.powi(d as i32) / (delta * sigma)
}

/// Recomputes aggregates, fits and checks from the trials.
pub fn summarize(cfg: ExperimentConfig, trials: Vec<TrialStats>) -> SmoothedReport {
    let aggregates = aggregate(&trials);
    let fits = fit(&aggregates);
    let total_flips: usize = trials.iter().map(|t| t.steps).sum();
    let small_flips: usize = trials.iter().map(|t| t.small_gain_flips).sum();
    let fraction = if total_flips == 0 { 0.0 } else { small_flips as f64 / total_flips as f64 };
    let floor = FloorCheck {
        tau: cfg.tau,
        delta: cfg.delta,
        small_flips,
        total_flips,
        fraction,
        pass: fraction <= cfg.delta,
    };
    let fitted_c = trials
        .iter()
        .map(|t| t.steps as f64 / step_scale(t.n, t.d, cfg.delta, t.sigma))
        .fold(0.0, f64::max);
    let step_bound = StepBoundCheck { fitted_c, c_max: cfg.c_max, pass: fitted_c <= cfg.c_max };
    let worst_fraction = aggregates
        .iter()
        .map(|a| {
            let limit = cfg.eq1.c_prime * (a.n as f64).powf(cfg.eq1.k1) * a.sigma.powf(-cfg.eq1.k2)
                / (cfg.delta * cfg.delta);
            let cell = trials.iter().filter(|t| t.n == a.n && t.sigma == a.sigma && t.rule == a.rule);
            let below = cell.clone().filter(|t| t.converged && (t.steps as f64) < limit).count();
            below as f64 / cell.count() as f64
        })
        .fold(1.0, f64::min);
    let quantile = QuantileCheck {
        constants: cfg.eq1.clone(),
        worst_fraction,
        pass: worst_fraction > 1.0 - cfg.delta,
    };
    let median_monotone_in_sigma = if cfg.sigmas.len() > 1 {
        let mut ok = true;
        for a in &aggregates {
            for b in &aggregates {
                if a.n == b.n && a.rule == b.rule && a.sigma < b.sigma && b.median_steps > a.median_steps {
                    ok = false;
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    let all_converged = trials.iter().all(|t| t.converged);
    let positive_gains = trials.iter().all(|t| t.steps == 0 || t.min_gain.is_some_and(|g| g > 0.0));
    let pass = all_converged && positive_gains && floor.pass && step_bound.pass && quantile.pass;
    SmoothedReport {
        checks: Checks {
            all_converged,
            positive_gains,
            tiny_gain_trials: trials.iter().filter(|t| t.tiny_gain).count(),
            degree_warnings: trials.iter().filter(|t| t.degree_warning).count(),
            floor,
            step_bound,
            quantile,
            median_monotone_in_sigma,
            pass,
        },
        config: cfg,
        trials,
        aggregates,
        fits,
    }
}

/// Uniform simple cubic graph by the configuration model with rejection.
pub fn random_cubic_graph<R: Rng>(rng: &mut R, n: usize, max_weight: u64) -> Result<WeightedGraph<i64>, SmoothedError> {
    if n < 4 || n % 2 == 1 {
        return Err(SmoothedError::CubicSize(n));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    'retry: loop {
        stubs.shuffle(rng);
        let mut g = WeightedGraph::<i64>::new(n);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.edge_between(u, v).is_some() {
                continue 'retry;
            }
            g.add_edge(u, v, rng.random_range(1..=max_weight as i64)).expect("checked edge");
        }
        return Ok(g);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicConfig {
    pub sizes: Vec<usize>,
    pub starts: usize,
    pub rule: PivotRule,
    pub max_weight: u64,
    pub seed: u64,
    pub slope_limit: f64,
}

impl Default for CubicConfig {
    fn default() -> Self {
        CubicConfig {
            sizes: vec![50, 100, 200, 400],
            starts: 20,
            rule: PivotRule::Random,
            max_weight: 1 << 20,
            seed: 0,
            slope_limit: 2.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicRow {
    pub n: usize,
    pub steps: Vec<usize>,
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicReport {
    pub config: CubicConfig,
    pub rows: Vec<CubicRow>,
    /// Slope of `log max steps` against `log n`.
    pub slope: f64,
    pub pass: bool,
}

pub fn cubic_bench(cfg: &CubicConfig) -> Result<CubicReport, SmoothedError> {
    if cfg.sizes.len() < 2 {
        return Err(SmoothedError::Empty("sizes (need two)"));
    }
    if cfg.starts == 0 {
        return Err(SmoothedError::Empty("starts"));
    }
    let rows = cfg
        .sizes
        .par_iter()
        .map(|&n| -> Result<CubicRow, SmoothedError> {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[n as u64]));
            let g = random_cubic_graph(&mut rng, n, cfg.max_weight)?;
            let mut steps = Vec::with_capacity(cfg.starts);
            for s in 0..cfg.starts {
                let start = Partition::from_bits((0..n).map(|_| rng.random()).collect());
                let seed = derive_seed(cfg.seed, &[n as u64, s as u64]);
                let t = run_flip(&g, &start, cfg.rule, usize::MAX, seed)?;
                steps.push(t.step_count);
            }
            Ok(CubicRow { n, max_steps: steps.iter().copied().max().unwrap_or(0), steps })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.max_steps.max(1) as f64).ln()))
        .collect();
    let slope = slope(&pts);
    Ok(CubicReport { config: cfg.clone(), pass: slope <= cfg.slope_limit, rows, slope })
}

/// Least-squares slope.
pub fn slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
