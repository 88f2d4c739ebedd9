//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use cutlab_core::circuit::{all_assignments, random_compilable_circuit, Circuit};
use cutlab_core::circuit2cut::{compile_cvp, compile_looker};
use cutlab_core::comparing::{
    canonical_star, comparing_spec, degrade, semantics, verify_theorem1, BiaserAttestation, NeighborColors,
};
use cutlab_core::flip::{enumerate_local_optima, pinned_local_optima, run_flip};
use cutlab_core::graph::{classify_node, gain, max_degree, NodeType};
use cutlab_core::io::{emit_circuit, emit_graph_with, emit_partition, parse_circuit, parse_graph, parse_partition, EmitOptions};
use cutlab_core::smoothed::{claim17_check, cubic_bench, experiment, Claim17Params, CubicConfig, ExperimentConfig};
use cutlab_core::{BigInt, Graph, Partition, PivotRule};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const CVP_CIRCUITS: usize = 24;
const CVP_MAX_GATES: usize = 5;
const LOOKER_CIRCUITS: usize = 12;
const LOOKER_MAX_GATES: usize = 7;
const CLAIM17_TRIALS: usize = 100_000;
const CLAIM17_C: f64 = 10.0;
const CLAIM17_SE_FACTOR: f64 = 3.0;
const FLOOR_TAU: f64 = 0.01;
const FLOOR_DELTA: f64 = 0.1;
const CUBIC_SLOPE: f64 = 2.2;
const CF_MAX_INPUTS: usize = 12;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1() -> Outcome {
    let mut optima = 0;
    let cs = common::circuits(SEED, CVP_CIRCUITS, 2, CVP_MAX_GATES);
    for (ci, c) in cs.iter().enumerate() {
        for x in all_assignments(c.input_count()) {
            let cg = compile_cvp(c, &x).map_err(|e| e.to_string())?;
            let value = c.eval(&x).unwrap();
            let lo = enumerate_local_optima(&cg.graph).map_err(|e| e.to_string())?;
            ensure(!lo.is_empty(), || format!("circuit {ci}: no local optimum"))?;
            for p in lo {
                let p = if p.color(cg.reference) { p } else { p.complement() };
                for i in 1..=c.gate_count() {
                    ensure(p.color(cg.node(i)) == value[i - 1], || {
                        format!("circuit {ci}, input {x:?}: v_{i} disagrees with G_{i} in {p}")
                    })?;
                }
                optima += 1;
            }
        }
    }
    Ok(format!("{} circuits, {optima} canonical optima checked", cs.len()))
}

fn criterion2() -> Outcome {
    let mut checked = 0;
    let cs = common::circuits(SEED + 1, LOOKER_CIRCUITS, 3, LOOKER_MAX_GATES);
    for (ci, c) in cs.iter().enumerate() {
        let cg = compile_looker(c).map_err(|e| e.to_string())?;
        ensure(cg.graph.node_count() <= 24, || format!("circuit {ci} too large"))?;
        for y in all_assignments(c.input_count()) {
            let mut pins: Vec<(usize, bool)> = cg.s_nodes.iter().copied().zip(y.iter().copied()).collect();
            pins.push((cg.reference, true));
            let want = c.eval_from_holders(&y).unwrap();
            let lo = pinned_local_optima(&cg.graph, &pins).map_err(|e| e.to_string())?;
            ensure(!lo.is_empty(), || format!("circuit {ci}, pinning {y:?}: no local optimum"))?;
            for p in lo {
                let got: Vec<bool> = cg.t_nodes.iter().map(|&t| p.color(t)).collect();
                ensure(got == want, || format!("circuit {ci}, pinning {y:?}: outputs {got:?}, expected {want:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} circuits, {checked} pinned optima checked", cs.len()))
}

fn criterion3() -> Outcome {
    let mut cases = 0;
    for m in 1..=3 {
        let star = canonical_star(m, &BigInt::from(1));
        let spec = comparing_spec(&star, 0, BiaserAttestation::default()).map_err(|e| e.to_string())?;
        for colors in NeighborColors::all(m) {
            let mut p = Partition::new(star.node_count());
            for (i, &(a, b)) in colors.pairs.iter().enumerate() {
                p.set(2 * i + 1, a);
                p.set(2 * i + 2, b);
            }
            p.set(2 * m + 1, colors.biaser);
            let happy: Vec<bool> = [false, true]
                .into_iter()
                .filter(|&c| {
                    p.set(0, c);
                    gain(&star, &p, 0).unwrap() <= BigInt::from(0)
                })
                .collect();
            ensure(happy.len() == 1, || format!("m={m}: center has {} happy colors", happy.len()))?;
            let want = semantics(&spec, &colors).unwrap();
            ensure(happy[0] == want, || format!("m={m}, {colors:?}: star says {}, semantics {want}", happy[0]))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} colorings"))
}

fn criterion4() -> Outcome {
    let mut parts = Vec::new();
    for m in 1..=3 {
        let r = verify_theorem1(m).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("m={m}: {} counterexamples, first {:?}", r.counterexamples.len(), r.counterexamples.first()))?;
        parts.push(format!("m={m}: {} cases x {} colorings", r.cases, r.internal_colorings));
    }
    Ok(parts.join(", "))
}

/// Comparing node 0 inside a host where the pair nodes have further neighbors.
fn embedded_star(m: usize, delta: u64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = canonical_star(m, &BigInt::from(delta));
    let extra = g.add_nodes(3);
    for u in 1..=2 * m {
        for k in 0..rng.random_range(0..=2) {
            let _ = g.add_edge(u, extra + k, BigInt::from(rng.random_range(1..100u32)));
        }
    }
    g
}

fn criterion5() -> Outcome {
    let mut compiled = 0;
    for c in common::circuits(SEED, CVP_CIRCUITS, 2, CVP_MAX_GATES)
        .iter()
        .chain(&common::circuits(SEED + 1, LOOKER_CIRCUITS, 3, LOOKER_MAX_GATES))
    {
        let mut graphs = vec![compile_looker(c).unwrap().graph];
        for x in all_assignments(c.input_count()) {
            graphs.push(compile_cvp(c, &x).unwrap().graph);
        }
        for g in graphs {
            ensure(max_degree(&g) <= 4, || "compiled graph has degree above 4".into())?;
            for v in 0..g.node_count() {
                let k = classify_node(&g, v).unwrap().kind;
                ensure(matches!(k, NodeType::TypeI | NodeType::TypeIII), || format!("node {v} is {k:?}"))?;
            }
            compiled += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut degraded = 0;
    for m in 1..=3 {
        for delta in [1, 3] {
            let g = embedded_star(m, delta, &mut rng);
            let spec = comparing_spec(&g, 0, BiaserAttestation::default()).map_err(|e| e.to_string())?;
            let dg = degrade(&g, &spec).map_err(|e| format!("m={m}: {e}"))?;
            for &(x, id) in &dg.internal {
                ensure(dg.graph.degree(id) <= 5, || format!("m={m}: {x} has degree {}", dg.graph.degree(id)))?;
            }
            for old in 1..g.node_count() {
                let new = dg.host_map[old].unwrap();
                // the biaser trades its delta edge for the looker edge
                ensure(dg.graph.degree(new) == g.degree(old), || format!("m={m}: node {old} degree changed"))?;
            }
            ensure(max_degree(&dg.graph) <= 5, || format!("m={m}: max degree {}", max_degree(&dg.graph)))?;
            degraded += 1;
        }
    }
    Ok(format!("{compiled} compiled graphs, {degraded} degraded graphs"))
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut worst: f64 = 0.0;
    for k in [1usize, 2, 4, 8] {
        for dp in [0.2, 0.5] {
            let subset: Vec<usize> = (1..=k).filter(|_| rng.random_bool(0.5)).collect();
            let r = claim17_check(&Claim17Params {
                k,
                subset,
                a: 0.0,
                delta_prime: dp,
                sigma: 0.1,
                c: CLAIM17_C,
                trials: CLAIM17_TRIALS,
                seed: rng.random(),
            })
            .map_err(|e| e.to_string())?;
            let ok = r.estimate <= r.bound + CLAIM17_SE_FACTOR * r.standard_error;
            ensure(ok, || format!("k={k}, delta'={dp}: {} > {}", r.estimate, r.bound))?;
            worst = worst.max(r.estimate / r.bound);
        }
    }
    Ok(format!("8 cases, largest estimate/bound {worst:.4}"))
}

fn criterion7() -> Outcome {
    let cfg = ExperimentConfig {
        sizes: vec![64, 128, 256],
        degree_factor: 2.0,
        sigmas: vec![0.1],
        trials: 50,
        rules: vec![PivotRule::Random],
        seed: SEED,
        tau: FLOOR_TAU,
        delta: FLOOR_DELTA,
        ..Default::default()
    };
    let r = experiment(&cfg).map_err(|e| e.to_string())?;
    let c = &r.checks;
    ensure(c.all_converged, || "a trial hit the safety cap".into())?;
    ensure(c.positive_gains, || "a flip had non-positive gain".into())?;
    ensure(c.floor.fraction <= FLOOR_DELTA, || format!("small-gain fraction {}", c.floor.fraction))?;
    let fc = c.step_bound.fitted_c;
    ensure(fc.is_finite() && fc > 0.0, || format!("fitted C = {fc}"))?;
    let max_steps = r.aggregates.iter().map(|a| a.max_steps).max().unwrap_or(0);
    Ok(format!(
        "{} trials, small-gain fraction {:.3e}, max steps {max_steps}, fitted C {fc:.3e}, n-exponent {:.2}",
        r.trials.len(),
        c.floor.fraction,
        r.fits.n_exponent.unwrap_or(f64::NAN)
    ))
}

fn criterion8() -> Outcome {
    let r = cubic_bench(&CubicConfig { seed: SEED, ..Default::default() }).map_err(|e| e.to_string())?;
    let maxes: Vec<String> = r.rows.iter().map(|row| format!("n={}:{}", row.n, row.max_steps)).collect();
    ensure(r.slope <= CUBIC_SLOPE, || format!("slope {:.3} ({})", r.slope, maxes.join(" ")))?;
    Ok(format!("slope {:.3}, max steps {}", r.slope, maxes.join(" ")))
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    for _ in 0..50 {
        let n = rng.random_range(2..12);
        let g = common::random_graph(&mut rng, n, 0.5, 1 << 40);
        for opts in [EmitOptions { exponents: false }, EmitOptions { exponents: true }] {
            let s = emit_graph_with(&g, opts);
            ensure(emit_graph_with(&parse_graph(&s).unwrap(), opts) == s, || format!("graph round trip:\n{s}"))?;
        }
        let p = Partition::from_bits((0..n).map(|_| rng.random()).collect());
        let s = emit_partition(&p);
        ensure(emit_partition(&parse_partition(&s, Some(n)).unwrap()) == s, || "partition round trip".into())?;
    }
    for c in common::circuits(SEED + 9, 30, 4, 12) {
        let s = emit_circuit(&c);
        let back = parse_circuit(&s).unwrap();
        ensure(back == c && emit_circuit(&back) == s, || format!("circuit round trip:\n{s}"))?;
    }
    let g = common::random_graph(&mut rng, 30, 0.3, 1000);
    let p0 = Partition::from_bits((0..30).map(|_| rng.random()).collect());
    ensure(
        run_flip(&g, &p0, PivotRule::Random, 1 << 20, 4) == run_flip(&g, &p0, PivotRule::Random, 1 << 20, 4),
        || "flip not reproducible".into(),
    )?;
    let small = ExperimentConfig { sizes: vec![16, 32], trials: 4, seed: 9, ..Default::default() };
    let a = serde_json::to_string(&experiment(&small).unwrap()).unwrap();
    let b = serde_json::to_string(&experiment(&small).unwrap()).unwrap();
    ensure(a == b, || "experiment not reproducible".into())?;
    let cc = CubicConfig { sizes: vec![20, 40], starts: 3, seed: 9, ..Default::default() };
    ensure(cubic_bench(&cc).unwrap() == cubic_bench(&cc).unwrap(), || "cubic bench not reproducible".into())?;
    let cp = Claim17Params { k: 3, subset: vec![1], a: 0.0, delta_prime: 0.5, sigma: 0.2, c: 1.0, trials: 1000, seed: 9 };
    ensure(claim17_check(&cp).unwrap() == claim17_check(&cp).unwrap(), || "claim17 not reproducible".into())?;
    let mut r1 = ChaCha8Rng::seed_from_u64(3);
    let mut r2 = ChaCha8Rng::seed_from_u64(3);
    ensure(
        random_compilable_circuit(&mut r1, 3, 4, 2) == random_compilable_circuit(&mut r2, 3, 4, 2),
        || "circuit sampler not reproducible".into(),
    )?;

    let mut checked = 0;
    let mut crng = ChaCha8Rng::seed_from_u64(SEED + 90);
    for inputs in 1..=CF_MAX_INPUTS {
        let c: Circuit = loop {
            // every holder needs a reader, so interior gates must keep up with the inputs
            let interior = crng.random_range(inputs..=inputs + 4);
            if let Some(c) = random_compilable_circuit(&mut crng, inputs, interior, 3) {
                break c;
            }
        };
        let table: Vec<BigUint> = all_assignments(inputs).map(|x| c.cf_objective(&x).unwrap()).collect();
        for (mask, x) in all_assignments(inputs).enumerate() {
            let better = (0..inputs).find(|&i| table[mask ^ (1 << i)] > table[mask]);
            let got = c.cf_improving_neighbor(&x).unwrap();
            let want = better.map(|i| {
                let mut y = x.clone();
                y[i] = !y[i];
                y
            });
            ensure(got == want, || format!("CIRCUITFLIP check disagrees at n={inputs}, x={x:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("round trips, determinism, {checked} CIRCUITFLIP assignments"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("circuit-value soundness", criterion1),
        ("looker outputs", criterion2),
        ("comparing semantics", criterion3),
        ("degradation equivalence", criterion4),
        ("degree discipline", criterion5),
        ("gaussian tail bound", criterion6),
        ("smoothed improvement floor", criterion7),
        ("cubic step bound", criterion8),
        ("infrastructure", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg} [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
