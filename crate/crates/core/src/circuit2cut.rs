//! The circuit-to-cut compiler and the looker/biaser composition.
//!
//! A circuit with gates `G_1..G_N` becomes a graph on `v_1..v_{3N+1}`: node
//! `v_i` carries the value of `G_i`, and `v_{N+1}..v_{3N+1}` form a chain with
//! weights `2^j` whose colors alternate in every local optimum. With
//! `c(v_{3N}) = 1` the chain supplies a black node `v_{N+2i}` and a white node
//! `v_{N+2i-1}` for every gate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, NormalForm, Src, Violation};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq)]
pub enum CompileError {
    #[error("circuit is not in compilable normal form: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotNormal(Vec<Violation>),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{what}: expected {expected}, got {got}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("host node {0} is used twice")]
    RepeatedHostNode(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", content = "index", rename_all = "lowercase")]
pub enum Role {
    /// `v_i` for gate `G_i`.
    Gate(usize),
    /// `v_j` with `N < j <= 3N + 1`.
    Chain(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledGraph {
    pub graph: Graph,
    pub gates: usize,
    pub roles: Vec<Role>,
    /// Input-holding nodes `v_{N-n+1}..v_N`.
    pub s_nodes: Vec<usize>,
    /// Output nodes `v_1..v_m`, least significant first.
    pub t_nodes: Vec<usize>,
    /// `v_{3N}`, black in the canonical reading (`v_{3N+1}` when `N = 0`).
    pub reference: usize,
    pub looker: bool,
}

impl CompiledGraph {
    /// Node id of `v_k`.
    pub fn node(&self, k: usize) -> usize {
        k - 1
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

pub fn compile_cvp(c: &Circuit, assignment: &[bool]) -> Result<CompiledGraph, CompileError> {
    if assignment.len() != c.input_count() {
        return Err(CompileError::Length {
            what: "assignment",
            expected: c.input_count(),
            got: assignment.len(),
        });
    }
    compile(c, Some(assignment))
}

/// The compiled graph without the edges that pin the input-holding gates.
pub fn compile_looker(c: &Circuit) -> Result<CompiledGraph, CompileError> {
    compile(c, None)
}

fn compile(c: &Circuit, assignment: Option<&[bool]>) -> Result<CompiledGraph, CompileError> {
    let violations = c.validate_normal_form(NormalForm::Compilable);
    if !violations.is_empty() {
        return Err(CompileError::NotNormal(violations));
    }
    let n = c.gate_count();
    let v = |k: usize| k - 1;
    let mut g = Graph::new(3 * n + 1);
    for i in 1..=n {
        let w = pow2(i);
        match *c.gate(i) {
            Gate::Nor(a, b) => {
                for s in [a, b] {
                    if let Src::Gate(j) = s {
                        g.add_edge(v(i), v(j), w.clone())?;
                    }
                }
                g.add_edge(v(i), v(n + 2 * i), w)?;
            }
            Gate::Not(Src::Gate(j)) => {
                g.add_edge(v(i), v(j), w)?;
            }
            Gate::Not(Src::Input(x)) => {
                if let Some(asg) = assignment {
                    // the holder outputs NOT x: white neighbor for 1, black for 0
                    let out = !asg[x];
                    let to = if out { n + 2 * i - 1 } else { n + 2 * i };
                    g.add_edge(v(i), v(to), w)?;
                }
            }
        }
    }
    for j in n + 1..=3 * n {
        g.add_edge(v(j), v(j + 1), pow2(j))?;
    }
    let roles = (1..=3 * n + 1)
        .map(|k| if k <= n { Role::Gate(k) } else { Role::Chain(k) })
        .collect();
    Ok(CompiledGraph {
        graph: g,
        gates: n,
        roles,
        s_nodes: c.holders().map(v).collect(),
        t_nodes: c.outputs().iter().map(|&o| v(o)).collect(),
        reference: if n == 0 { 0 } else { v(3 * n) },
        looker: assignment.is_none(),
    })
}

/// Every weight multiplied by `factor`.
pub fn scale(g: &Graph, factor: &BigInt) -> Graph {
    assert!(factor >= &BigInt::one(), "scale factor must be positive");
    g.map_weights(|w| w * factor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Target pushed to the color opposite to `c(t_j)`: a direct edge.
    Opposite,
    /// Target pushed to `c(t_j)` through an inverter node.
    Same,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasLink {
    pub output: usize,
    pub target: usize,
    pub polarity: Polarity,
    pub weight: BigInt,
    pub inverter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasWiring {
    pub links: Vec<BiasLink>,
    pub looker_scale: BigInt,
    pub host_scale: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiasedGraph {
    pub graph: Graph,
    /// Composite id of every looker node.
    pub looker_nodes: Vec<usize>,
    pub wiring: BiasWiring,
}

pub const LOOKER_SCALE: u32 = 4;

/// Composes a host with a looker that reads `look_at` and biases the targets.
///
/// The host is scaled by a power of two `H` with `H · budget` above the total
/// looker weight, so looker edges only settle host nodes that are tied.
pub fn attach_biaser(
    host: &Graph,
    looker: &CompiledGraph,
    look_at: &[usize],
    bias: &[(usize, Polarity)],
    budget: &BigInt,
) -> Result<BiasedGraph, CompileError> {
    attach_biaser_anchored(host, looker, look_at, bias, budget, None)
}

/// [`attach_biaser`] that also merges the looker's reference node into `anchor`.
pub fn attach_biaser_anchored(
    host: &Graph,
    looker: &CompiledGraph,
    look_at: &[usize],
    bias: &[(usize, Polarity)],
    budget: &BigInt,
    anchor: Option<usize>,
) -> Result<BiasedGraph, CompileError> {
    if look_at.len() != looker.s_nodes.len() {
        return Err(CompileError::Length {
            what: "look_at",
            expected: looker.s_nodes.len(),
            got: look_at.len(),
        });
    }
    if bias.len() != looker.t_nodes.len() {
        return Err(CompileError::Length {
            what: "bias",
            expected: looker.t_nodes.len(),
            got: bias.len(),
        });
    }
    if budget < &BigInt::one() {
        return Err(CompileError::ZeroBudget);
    }
    let mut seen = std::collections::BTreeSet::new();
    for &x in look_at.iter().chain(anchor.iter()) {
        host.check_node(x)?;
        if !seen.insert(x) {
            return Err(CompileError::RepeatedHostNode(x));
        }
    }
    let mut targets = std::collections::BTreeSet::new();
    for &(t, _) in bias {
        host.check_node(t)?;
        if !targets.insert(t) {
            return Err(CompileError::RepeatedHostNode(t));
        }
    }

    let ls = BigInt::from(LOOKER_SCALE);
    let bias_total: BigInt = bias
        .iter()
        .map(|(_, p)| BigInt::from(if *p == Polarity::Opposite { 1 } else { 3 }))
        .sum();
    let looker_total = looker.graph.total_weight() * &ls + bias_total;
    let mut hs = BigInt::one();
    while &hs * budget <= looker_total {
        hs <<= 1;
    }

    let mut g = scale(host, &hs);
    let mut map = vec![usize::MAX; looker.graph.node_count()];
    for (i, &s) in looker.s_nodes.iter().enumerate() {
        map[s] = look_at[i];
    }
    if let Some(a) = anchor {
        map[looker.reference] = a;
    }
    for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
        *slot = g.add_nodes(1);
    }
    for e in looker.graph.edges() {
        g.add_edge(map[e.u], map[e.v], &e.w * &ls)?;
    }
    let mut links = Vec::with_capacity(bias.len());
    for (&t, &(target, polarity)) in looker.t_nodes.iter().zip(bias) {
        let out = map[t];
        let inverter = match polarity {
            Polarity::Opposite => {
                g.add_edge(out, target, BigInt::one())?;
                None
            }
            Polarity::Same => {
                let x = g.add_nodes(1);
                g.add_edge(out, x, BigInt::from(2))?;
                g.add_edge(x, target, BigInt::one())?;
                Some(x)
            }
        };
        links.push(BiasLink {
            output: out,
            target,
            polarity,
            weight: BigInt::one(),
            inverter,
        });
    }
    Ok(BiasedGraph {
        graph: g,
        looker_nodes: map,
        wiring: BiasWiring {
            links,
            looker_scale: ls,
            host_scale: hs,
        },
    })
}

/// True when every weight of `g` is a power of two.
pub fn powers_of_two(g: &Graph) -> bool {
    g.edges().iter().all(|e| {
        let w = &e.w;
        w > &BigInt::zero() && (w & (w - BigInt::one())).is_zero()
    })
}
