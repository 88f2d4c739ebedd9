//! Seeded instances shared by the benchmarks.

use cutlab_core::circuit::random_compilable_circuit;
use cutlab_core::smoothed::{normalize, random_bounded_degree_graph, random_cubic_graph, RealGraph};
use cutlab_core::{compile_cvp, CompiledGraph, Partition, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn log_degree_graph(n: usize, seed: u64) -> RealGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = (2.0 * (n as f64).log2()).ceil() as usize;
    normalize(&random_bounded_degree_graph(&mut rng, n, d, 1000)).expect("graph has edges")
}

pub fn cubic_graph(n: usize, seed: u64) -> WeightedGraph<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cubic_graph(&mut rng, n, 1 << 20).expect("even n >= 4")
}

/// A compiled circuit with `interior` gates between holders and outputs.
pub fn compiled_circuit(interior: usize, seed: u64) -> CompiledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(c) = random_compilable_circuit(&mut rng, 2, interior, 2) {
            let x: Vec<bool> = (0..c.input_count()).map(|_| rng.random()).collect();
            return compile_cvp(&c, &x).expect("normal form circuit");
        }
    }
}

pub fn random_partition(n: usize, seed: u64) -> Partition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Partition::from_bits((0..n).map(|_| rng.random()).collect())
}
