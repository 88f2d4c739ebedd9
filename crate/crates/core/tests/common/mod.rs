#![allow(dead_code)]

use cutlab_core::circuit::{random_compilable_circuit, Circuit};
use cutlab_core::{BigInt, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Compilable circuits with at most `max_gates` gates, seeded.
pub fn circuits(seed: u64, count: usize, max_inputs: usize, max_gates: usize) -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let inputs = rng.random_range(1..=max_inputs);
        let outputs = rng.random_range(1..=2);
        if inputs + outputs > max_gates {
            continue;
        }
        let interior = rng.random_range(0..=max_gates - inputs - outputs);
        if let Some(c) = random_compilable_circuit(&mut rng, inputs, interior, outputs) {
            out.push(c);
        }
    }
    out
}

/// Random simple graph with positive weights below `max_w`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64, max_w: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_prob) {
                g.add_edge(u, v, BigInt::from(rng.random_range(1..max_w))).unwrap();
            }
        }
    }
    g
}
