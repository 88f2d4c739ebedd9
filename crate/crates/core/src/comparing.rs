//! Comparing nodes and their degree-five degradation.
//!
//! A comparing node `v` has pairs `(u_i^1, u_i^2)` joined to it with weight
//! `a_i` and one biaser edge of weight `δ`. Read `a` from the bits `c(u_i^1)`
//! and `b` from the complements of `c(u_i^2)`; at a local optimum `v` is white
//! if `a > b`, black if `a < b`, and takes its bias color (the opposite of
//! `c(u)`) on a tie.
//!
//! Degrading `v` replaces it by internal nodes `v_{i,j}^k`. The class-1 nodes
//! `v_{i,1}^k` take over the pair edges and end up with the color of `v`; the
//! class-2 nodes `v_{i,2}^k` end up with the opposite color. A NOT-tree looker
//! reading `u` nudges every internal node towards its correct color with edges
//! far below `δ`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Src};
use crate::circuit2cut::{attach_biaser, compile_looker, BiasLink, CompileError, Polarity};
use crate::flip::{pinned_local_optima, FlipError};
use crate::graph::{Graph, GraphError, Partition};

#[derive(Debug, Error, PartialEq)]
pub enum ComparingError {
    #[error("node {node} has {degree} incident edges; a comparing node needs an odd number of at least 3")]
    WrongArity { node: usize, degree: usize },
    #[error("no unique lightest edge to serve as the biaser edge")]
    NoDelta,
    #[error("incident weights do not group into equal pairs")]
    OddPairing,
    #[error("more than two incident edges share weight {0}")]
    AmbiguousPairing(BigInt),
    #[error("weights violate a_i >= 2 a_(i+1) or a_m >= 2 delta at pair {0}")]
    Ratio(usize),
    #[error("biaser attestation names node {named}, but the lightest edge leads to {found}")]
    BiaserMismatch { named: usize, found: usize },
    #[error("expected colors for {expected} pairs, got {got}")]
    MissingColors { expected: usize, got: usize },
    #[error("spec does not match the graph around node {0}")]
    SpecMismatch(usize),
    #[error("no tabulated gadget for m = {0} (supported: 1..=3)")]
    Unsupported(usize),
    #[error("the gadget fails the local-optimum check for these weights: {0}")]
    GadgetRejected(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flip(#[from] FlipError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

/// Caller's statement about condition (ii): which node is the biaser `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BiaserAttestation {
    /// Expected biaser node, checked against the lightest edge when given.
    pub node: Option<usize>,
    /// The caller vouches that `u` belongs to a subgraph looking at other nodes.
    pub attested: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub first: usize,
    pub second: usize,
    pub weight: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparingSpec {
    pub center: usize,
    /// `(u_i^1, u_i^2, a_i)` with `a_1` largest.
    pub pairs: Vec<Pair>,
    pub biaser: usize,
    pub delta: BigInt,
    pub biaser_attested: bool,
}

impl ComparingSpec {
    pub fn m(&self) -> usize {
        self.pairs.len()
    }
}

pub fn comparing_spec(g: &Graph, v: usize, att: BiaserAttestation) -> Result<ComparingSpec, ComparingError> {
    g.check_node(v)?;
    let degree = g.degree(v);
    if degree < 3 || degree.is_multiple_of(2) {
        return Err(ComparingError::WrongArity { node: v, degree });
    }
    let mut nb: Vec<(usize, BigInt)> = g.neighbors(v).map(|(u, w)| (u, w.clone())).collect();
    // heaviest first, lower id first among equal weights
    nb.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    let (biaser, delta) = nb.pop().expect("degree >= 3");
    if nb.last().is_some_and(|(_, w)| *w == delta) {
        return Err(ComparingError::NoDelta);
    }
    if let Some(named) = att.node {
        if named != biaser {
            return Err(ComparingError::BiaserMismatch { named, found: biaser });
        }
    }
    let mut pairs = Vec::new();
    for chunk in nb.chunks(2) {
        let [(x, wx), (y, wy)] = chunk else { unreachable!("even count") };
        if wx != wy {
            return Err(ComparingError::OddPairing);
        }
        if nb.iter().filter(|(_, w)| w == wx).count() > 2 {
            return Err(ComparingError::AmbiguousPairing(wx.clone()));
        }
        pairs.push(Pair { first: *x, second: *y, weight: wx.clone() });
    }
    for i in 0..pairs.len() {
        let next = pairs.get(i + 1).map(|p| &p.weight).unwrap_or(&delta);
        if pairs[i].weight < next * 2 {
            return Err(ComparingError::Ratio(i + 1));
        }
    }
    Ok(ComparingSpec {
        center: v,
        pairs,
        biaser,
        delta,
        biaser_attested: att.attested,
    })
}

/// Colors of the pairs `(c(u_i^1), c(u_i^2))` and of the biaser `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborColors {
    pub pairs: Vec<(bool, bool)>,
    pub biaser: bool,
}

impl NeighborColors {
    pub fn from_partition(spec: &ComparingSpec, p: &Partition) -> Self {
        NeighborColors {
            pairs: spec.pairs.iter().map(|q| (p.color(q.first), p.color(q.second))).collect(),
            biaser: p.color(spec.biaser),
        }
    }

    /// Every coloring of `m` pairs and the biaser.
    pub fn all(m: usize) -> impl Iterator<Item = NeighborColors> {
        (0u32..1 << (2 * m + 1)).map(move |mask| NeighborColors {
            pairs: (0..m)
                .map(|i| ((mask >> (2 * i)) & 1 == 1, (mask >> (2 * i + 1)) & 1 == 1))
                .collect(),
            biaser: (mask >> (2 * m)) & 1 == 1,
        })
    }

    /// The color `v` is biased to.
    pub fn bias_color(&self) -> bool {
        !self.biaser
    }
}

/// Smallest 1-based `i` with `c(u_i^1) = c(u_i^2)`; `None` when weakly indifferent.
pub fn decisive_pair(colors: &NeighborColors) -> Option<usize> {
    colors.pairs.iter().position(|(x, y)| x == y).map(|i| i + 1)
}

/// Color of the comparing node at a local optimum.
pub fn semantics(spec: &ComparingSpec, colors: &NeighborColors) -> Result<bool, ComparingError> {
    if colors.pairs.len() != spec.m() {
        return Err(ComparingError::MissingColors { expected: spec.m(), got: colors.pairs.len() });
    }
    Ok(match decisive_pair(colors) {
        // equal pair colored χ means a_i = χ and b_i = ¬χ, so v = ¬χ
        Some(i) => !colors.pairs[i - 1].0,
        None => colors.bias_color(),
    })
}

/// Internal node `v_{i,j}^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Internal {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Internal {
    /// Class-1 nodes `v_{i,1}^k` share the color of the comparing node.
    pub fn class_one(&self) -> bool {
        self.j == 1
    }
}

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v_{{{},{}}}^{}", self.i, self.j, self.k)
    }
}

/// The `4m - 1` internal nodes, level by level.
pub fn internal_nodes(m: usize) -> Vec<Internal> {
    let mut out = Vec::with_capacity(4 * m - 1);
    for i in 1..=m {
        for (j, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            if !(i == m && j == 2 && k == 2) {
                out.push(Internal { i, j, k });
            }
        }
    }
    out
}

/// Gadget edges between internal nodes as `(x, y, c)`: weight `Σ c_l · a_l / 2`.
type GadgetTable = &'static [(&'static str, &'static str, &'static [u32])];

const GADGET_1: GadgetTable = &[("A1", "C1", &[2]), ("B1", "C1", &[2])];

const GADGET_2: GadgetTable = &[
    ("A1", "C1", &[1, 0]),
    ("A1", "C2", &[1, 0]),
    ("B1", "C1", &[1, 0]),
    ("B1", "C2", &[1, 0]),
    ("A2", "C1", &[0, 2]),
    ("B2", "C1", &[0, 2]),
];

const GADGET_3: GadgetTable = &[
    ("A1", "C1", &[2, 0, 0]),
    ("B1", "D1", &[0, 2, 0]),
    ("B1", "C2", &[0, 2, 0]),
    ("A2", "C1", &[0, 2, 0]),
    ("A2", "C2", &[0, 2, 0]),
    ("A2", "C3", &[0, 2, 0]),
    ("B2", "C1", &[0, 2, 0]),
    ("B2", "D1", &[0, 2, 0]),
    ("B2", "C3", &[0, 2, 0]),
    ("A3", "C3", &[0, 0, 2]),
    ("B3", "C3", &[0, 0, 2]),
];

fn gadget_table(m: usize) -> Result<GadgetTable, ComparingError> {
    match m {
        1 => Ok(GADGET_1),
        2 => Ok(GADGET_2),
        3 => Ok(GADGET_3),
        _ => Err(ComparingError::Unsupported(m)),
    }
}

/// `A_i, B_i, C_i, D_i` name `v_{i,1}^1, v_{i,1}^2, v_{i,2}^1, v_{i,2}^2`.
fn parse_name(s: &str) -> Internal {
    let i = s[1..].parse().expect("level");
    let (j, k) = match &s[..1] {
        "A" => (1, 1),
        "B" => (1, 2),
        "C" => (2, 1),
        "D" => (2, 2),
        _ => unreachable!("gadget names use A-D"),
    };
    Internal { i, j, k }
}

/// Internal edges with weights in half units of the pair weights.
fn gadget_edges(spec: &ComparingSpec) -> Result<Vec<(Internal, Internal, BigInt)>, ComparingError> {
    let table = gadget_table(spec.m())?;
    Ok(table
        .iter()
        .map(|(x, y, c)| {
            let w: BigInt = c
                .iter()
                .zip(&spec.pairs)
                .map(|(&c, p)| &p.weight * BigInt::from(c))
                .sum();
            (parse_name(x), parse_name(y), w)
        })
        .collect())
}

/// Bias terminals stand in for the looker outputs: every internal node gets
/// one weight-1 edge to a pinned node. Heavy weights are doubled half units,
/// so the bias only settles exact ties.
struct TerminalModel {
    graph: Graph,
    m: usize,
    internals: Vec<Internal>,
    /// Node ids of `u_i^1, u_i^2` in pair order.
    externals: Vec<(usize, usize)>,
    internal_base: usize,
    terminal_base: usize,
}

impl TerminalModel {
    fn new(spec: &ComparingSpec) -> Result<Self, ComparingError> {
        let m = spec.m();
        let internals = internal_nodes(m);
        let index = |x: Internal| internals.iter().position(|y| *y == x).expect("internal node");
        let internal_base = 2 * m;
        let terminal_base = internal_base + internals.len();
        let mut g = Graph::new(terminal_base + internals.len());
        let four = BigInt::from(4);
        let two = BigInt::from(2);
        let mut externals = Vec::new();
        for (i, p) in spec.pairs.iter().enumerate() {
            let (x, y) = (2 * i, 2 * i + 1);
            let a = internal_base + index(Internal { i: i + 1, j: 1, k: 1 });
            let b = internal_base + index(Internal { i: i + 1, j: 1, k: 2 });
            g.add_edge(x, a, &p.weight * &four)?;
            g.add_edge(y, b, &p.weight * &four)?;
            externals.push((x, y));
        }
        for (x, y, w) in gadget_edges(spec)? {
            g.add_edge(internal_base + index(x), internal_base + index(y), w * &two)?;
        }
        for t in 0..internals.len() {
            g.add_edge(internal_base + t, terminal_base + t, BigInt::one())?;
        }
        Ok(TerminalModel { graph: g, m, internals, externals, internal_base, terminal_base })
    }

    fn pins(&self, colors: &NeighborColors) -> Vec<(usize, bool)> {
        let mut pins = Vec::new();
        for (i, &(x, y)) in self.externals.iter().enumerate() {
            pins.push((x, colors.pairs[i].0));
            pins.push((y, colors.pairs[i].1));
        }
        for (t, n) in self.internals.iter().enumerate() {
            // class-1 outputs copy c(u), class-2 outputs carry its negation
            let c = if n.class_one() { colors.biaser } else { !colors.biaser };
            pins.push((self.terminal_base + t, c));
        }
        pins
    }

    fn internal_coloring(&self, p: &Partition) -> Vec<bool> {
        (0..self.internals.len()).map(|t| p.color(self.internal_base + t)).collect()
    }

    fn decode(&self, internal: &[bool]) -> Option<bool> {
        col_of(&self.internals, internal)
    }
}

fn col_of(internals: &[Internal], colors: &[bool]) -> Option<bool> {
    [false, true].into_iter().find(|&kappa| {
        internals.iter().zip(colors).all(|(n, &c)| c == if n.class_one() { kappa } else { !kappa })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub colors: NeighborColors,
    pub expected: bool,
    /// Internal colorings found locally optimal, in `internal_nodes` order.
    pub optima: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub weights: Vec<BigInt>,
    pub delta: BigInt,
    pub cases: usize,
    pub internal_colorings: u64,
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
}

/// Checks the gadget of `spec` on every neighbor coloring whose bias agrees
/// with the comparison: the correct internal coloring must be the only local optimum.
pub fn check_gadget(spec: &ComparingSpec) -> Result<VerificationReport, ComparingError> {
    let model = TerminalModel::new(spec)?;
    let cases: Vec<(NeighborColors, bool)> = NeighborColors::all(model.m)
        .filter_map(|c| {
            let kappa = semantics(spec, &c).ok()?;
            (kappa == c.bias_color()).then_some((c, kappa))
        })
        .collect();
    let results: Vec<Result<Option<Counterexample>, ComparingError>> = cases
        .par_iter()
        .map(|(colors, kappa)| {
            let opt = pinned_local_optima(&model.graph, &model.pins(colors))?;
            let decoded: Vec<Option<bool>> =
                opt.iter().map(|p| model.decode(&model.internal_coloring(p))).collect();
            let ok = opt.len() == 1 && decoded[0] == Some(*kappa);
            Ok((!ok).then(|| Counterexample {
                colors: colors.clone(),
                expected: *kappa,
                optima: opt
                    .iter()
                    .map(|p| Partition::from_bits(model.internal_coloring(p)).to_string())
                    .collect(),
            }))
        })
        .collect();
    let mut counterexamples = Vec::new();
    for r in results {
        if let Some(c) = r? {
            counterexamples.push(c);
        }
    }
    Ok(VerificationReport {
        m: model.m,
        weights: spec.pairs.iter().map(|p| p.weight.clone()).collect(),
        delta: spec.delta.clone(),
        cases: cases.len(),
        internal_colorings: 1u64 << model.internals.len(),
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}

/// Star on `v = 0`, pairs `u_i^1 = 2i - 1`, `u_i^2 = 2i` with `a_i = 2^(m-i+1) δ`,
/// and the biaser `u = 2m + 1` at weight `δ`.
pub fn canonical_star(m: usize, delta: &BigInt) -> Graph {
    let mut g = Graph::new(2 * m + 2);
    for i in 1..=m {
        let a = delta * (BigInt::one() << (m - i + 1));
        g.add_edge(0, 2 * i - 1, a.clone()).expect("fresh edge");
        g.add_edge(0, 2 * i, a).expect("fresh edge");
    }
    g.add_edge(0, 2 * m + 1, delta.clone()).expect("fresh edge");
    g
}

pub fn verify_theorem1(m: usize) -> Result<VerificationReport, ComparingError> {
    if !(1..=3).contains(&m) {
        return Err(ComparingError::Unsupported(m));
    }
    let star = canonical_star(m, &BigInt::one());
    let spec = comparing_spec(&star, 0, BiaserAttestation { node: Some(2 * m + 1), attested: true })?;
    check_gadget(&spec)
}

/// NOT tree holding one input `y`: outputs `G_1..G_{4m-1}` alternate `y, ¬y, y, …`.
pub fn bias_circuit(m: usize) -> Circuit {
    let outs = 4 * m - 1;
    let n_gates = 2 * outs + 1;
    let mut gates = Vec::with_capacity(n_gates);
    // output G_k hangs off chain gate G_{n_gates - k}
    for k in 1..=outs {
        gates.push(Gate::Not(Src::Gate(n_gates - k)));
    }
    for k in (1..=outs).rev() {
        // chain gate number k reads the previous chain gate or the holder
        gates.push(Gate::Not(Src::Gate(n_gates - k + 1)));
    }
    gates.push(Gate::Not(Src::Input(0)));
    Circuit::new(1, gates, (1..=outs).collect()).expect("well-formed NOT tree")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rewire {
    pub external: usize,
    pub internal: Internal,
    pub node: usize,
    pub weight: BigInt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegradedGadget {
    pub graph: Graph,
    pub spec: ComparingSpec,
    /// New id of every original node; `None` for the removed center.
    pub host_map: Vec<Option<usize>>,
    pub internal: Vec<(Internal, usize)>,
    /// Composite ids of the bias looker's nodes.
    pub looker_nodes: Vec<usize>,
    pub rewired: Vec<Rewire>,
    pub bias_links: Vec<BiasLink>,
    /// Factor applied to every original weight.
    pub scale: BigInt,
}

impl DegradedGadget {
    pub fn internal_node(&self, x: Internal) -> Option<usize> {
        self.internal.iter().find(|(y, _)| *y == x).map(|&(_, id)| id)
    }
}

pub fn degrade(g: &Graph, spec: &ComparingSpec) -> Result<DegradedGadget, ComparingError> {
    let v = spec.center;
    g.check_node(v)?;
    let found = comparing_spec(g, v, BiaserAttestation { node: Some(spec.biaser), attested: spec.biaser_attested })
        .map_err(|_| ComparingError::SpecMismatch(v))?;
    if found.pairs.len() != spec.pairs.len()
        || found.delta != spec.delta
        || found.pairs.iter().zip(&spec.pairs).any(|(a, b)| {
            a.weight != b.weight || (a.first.min(a.second), a.first.max(a.second)) != (b.first.min(b.second), b.first.max(b.second))
        })
    {
        return Err(ComparingError::SpecMismatch(v));
    }
    let report = check_gadget(spec)?;
    if !report.passed {
        let c = &report.counterexamples[0];
        return Err(ComparingError::GadgetRejected(format!(
            "pairs {:?}, biaser {} -> optima {:?}",
            c.colors.pairs, c.colors.biaser, c.optima
        )));
    }

    let m = spec.m();
    let two = BigInt::from(2);
    let mut host_map = vec![None; g.node_count()];
    let mut next = 0;
    for (old, slot) in host_map.iter_mut().enumerate() {
        if old != v {
            *slot = Some(next);
            next += 1;
        }
    }
    let internals = internal_nodes(m);
    let mut heavy = Graph::new(next + internals.len());
    for e in g.edges() {
        if e.u != v && e.v != v {
            heavy.add_edge(host_map[e.u].unwrap(), host_map[e.v].unwrap(), &e.w * &two)?;
        }
    }
    let id = |x: Internal| next + internals.iter().position(|y| *y == x).expect("internal node");
    let mut rewired = Vec::new();
    for (i, p) in spec.pairs.iter().enumerate() {
        for (k, ext) in [(1, p.first), (2, p.second)] {
            let internal = Internal { i: i + 1, j: 1, k };
            let node = host_map[ext].unwrap();
            heavy.add_edge(node, id(internal), &p.weight * &two)?;
            rewired.push(Rewire { external: ext, internal, node, weight: p.weight.clone() });
        }
    }
    for (x, y, w) in gadget_edges(spec)? {
        heavy.add_edge(id(x), id(y), w)?;
    }

    let looker = compile_looker(&bias_circuit(m))?;
    // odd outputs copy c(u) and go to class-1 nodes, even ones to class-2 nodes
    let class1: Vec<Internal> = internals.iter().copied().filter(Internal::class_one).collect();
    let class2: Vec<Internal> = internals.iter().copied().filter(|x| !x.class_one()).collect();
    let mut bias = Vec::with_capacity(internals.len());
    for j in 1..=looker.t_nodes.len() {
        let x = if j % 2 == 1 { class1[j / 2] } else { class2[j / 2 - 1] };
        bias.push((id(x), Polarity::Opposite));
    }
    let u = host_map[spec.biaser].unwrap();
    let biased = attach_biaser(&heavy, &looker, &[u], &bias, &BigInt::one())?;
    let scale = &biased.wiring.host_scale * &two;
    Ok(DegradedGadget {
        graph: biased.graph,
        spec: spec.clone(),
        host_map,
        internal: internals.iter().map(|&x| (x, id(x))).collect(),
        looker_nodes: biased.looker_nodes,
        rewired,
        bias_links: biased.wiring.links,
        scale,
    })
}

/// Decoded color of the degraded node, `None` when the internal coloring is mixed.
pub fn col(dg: &DegradedGadget, p: &Partition) -> Result<Option<bool>, ComparingError> {
    dg.graph.check_partition(p)?;
    let nodes: Vec<Internal> = dg.internal.iter().map(|(x, _)| *x).collect();
    let colors: Vec<bool> = dg.internal.iter().map(|&(_, id)| p.color(id)).collect();
    Ok(col_of(&nodes, &colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::max_degree;

    fn star(ws: &[i64]) -> Graph {
        Graph::from_edges(ws.len() + 1, ws.iter().enumerate().map(|(i, &w)| (0, i + 1, BigInt::from(w)))).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = comparing_spec(&star(&[8, 8, 4, 4, 2]), 0, BiaserAttestation::default()).unwrap();
        assert_eq!(s.m(), 2);
        assert_eq!(s.pairs[0].weight, BigInt::from(8));
        assert_eq!(s.delta, BigInt::from(2));
        assert_eq!(s.biaser, 5);
        assert_eq!(
            comparing_spec(&star(&[8, 8, 5, 5, 2]), 0, BiaserAttestation::default()),
            Err(ComparingError::Ratio(1))
        );
        assert_eq!(comparing_spec(&star(&[8, 8, 4]), 0, BiaserAttestation::default()).unwrap().m(), 1);
        assert!(matches!(
            comparing_spec(&star(&[8, 8, 4, 4]), 0, BiaserAttestation::default()),
            Err(ComparingError::WrongArity { degree: 4, .. })
        ));
        assert_eq!(
            comparing_spec(&star(&[8, 6, 3]), 0, BiaserAttestation::default()),
            Err(ComparingError::OddPairing)
        );
        assert_eq!(comparing_spec(&star(&[8, 8, 8]), 0, BiaserAttestation::default()), Err(ComparingError::NoDelta));
        assert_eq!(
            comparing_spec(&star(&[8, 8, 4]), 0, BiaserAttestation { node: Some(1), attested: true }),
            Err(ComparingError::BiaserMismatch { named: 1, found: 3 })
        );
    }

    #[test]
    fn semantics_examples() {
        let s = comparing_spec(&star(&[8, 8, 4, 4, 2]), 0, BiaserAttestation::default()).unwrap();
        let c = NeighborColors { pairs: vec![(true, false), (false, false)], biaser: false };
        assert!(semantics(&s, &c).unwrap());
        let c = NeighborColors { pairs: vec![(true, false), (false, true)], biaser: false };
        assert_eq!(semantics(&s, &c).unwrap(), c.bias_color());
        let c = NeighborColors { pairs: vec![(true, false), (false, true)], biaser: true };
        assert!(!semantics(&s, &c).unwrap());
    }

    #[test]
    fn decisive_examples() {
        let c = |pairs: Vec<(bool, bool)>| NeighborColors { pairs, biaser: false };
        assert_eq!(decisive_pair(&c(vec![(true, false), (true, true), (false, false)])), Some(2));
        assert_eq!(decisive_pair(&c(vec![(true, false), (false, true)])), None);
        assert_eq!(decisive_pair(&c(vec![(true, true), (false, false)])), Some(1));
    }

    #[test]
    fn internal_counts() {
        for m in 1..=5 {
            assert_eq!(internal_nodes(m).len(), 4 * m - 1);
        }
        assert_eq!(
            internal_nodes(1),
            vec![Internal { i: 1, j: 1, k: 1 }, Internal { i: 1, j: 1, k: 2 }, Internal { i: 1, j: 2, k: 1 }]
        );
    }

    #[test]
    fn bias_circuit_alternates() {
        for m in 1..=3 {
            let c = bias_circuit(m);
            assert!(c.validate_normal_form(crate::circuit::NormalForm::Compilable).is_empty());
            for y in [false, true] {
                let out = c.eval_from_holders(&[y]).unwrap();
                for (j, &b) in out.iter().enumerate() {
                    assert_eq!(b, if j % 2 == 0 { y } else { !y });
                }
            }
        }
    }

    #[test]
    fn theorem1_small() {
        for m in 1..=2 {
            let r = verify_theorem1(m).unwrap();
            assert!(r.passed, "{:?}", r.counterexamples.first());
        }
        assert!(verify_theorem1(4).is_err());
    }

    #[test]
    fn degrade_star() {
        let g = canonical_star(2, &BigInt::from(3));
        let spec = comparing_spec(&g, 0, BiaserAttestation::default()).unwrap();
        let dg = degrade(&g, &spec).unwrap();
        for &(_, id) in &dg.internal {
            assert!(dg.graph.degree(id) <= 5);
        }
        for r in &dg.rewired {
            assert_eq!(dg.graph.degree(r.node), 1);
        }
        assert!(max_degree(&dg.graph) <= 5);
    }
}
