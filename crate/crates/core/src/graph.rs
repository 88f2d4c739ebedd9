//! Weighted graphs, 2-colorings and the cut arithmetic built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge weight usable by the cut and search code.
///
/// Implemented for exact integers ([`BigInt`], `i64`, `i128`) and `f64`.
pub trait Weight: Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn to_f64(&self) -> f64;
    /// Base-2 logarithm of a positive value, approximate for huge integers.
    fn log2(&self) -> f64;
    /// Exact conversion into `i128` if the value fits.
    fn to_i128(&self) -> Option<i128>;
    /// Strictly greater than zero; `Signed::is_positive` also accepts `+0.0`.
    fn above_zero(&self) -> bool {
        *self > Self::zero()
    }
    /// Whether sums are exact, so gains may be updated incrementally.
    const EXACT: bool = true;
}

impl Weight for BigInt {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
    fn log2(&self) -> f64 {
        let bits = self.bits();
        if bits <= 1000 {
            Weight::to_f64(self).log2()
        } else {
            bits as f64
        }
    }
    fn to_i128(&self) -> Option<i128> {
        ToPrimitive::to_i128(self)
    }
}

impl Weight for i64 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn log2(&self) -> f64 {
        (*self as f64).log2()
    }
    fn to_i128(&self) -> Option<i128> {
        Some(*self as i128)
    }
}

impl Weight for i128 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn log2(&self) -> f64 {
        (*self as f64).log2()
    }
    fn to_i128(&self) -> Option<i128> {
        Some(*self)
    }
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }
    fn log2(&self) -> f64 {
        f64::log2(*self)
    }
    fn to_i128(&self) -> Option<i128> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} has a non-positive weight")]
    NonPositiveWeight(usize, usize),
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("partition has length {got}, graph has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub w: W,
}

impl<W> Edge<W> {
    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected simple graph with an incidence index.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    incident: Vec<Vec<usize>>,
}

/// The exact graph type: arbitrary-precision positive integer weights.
pub type Graph = WeightedGraph<BigInt>;

impl<W: Weight> WeightedGraph<W> {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, W)>,
    {
        let mut g = Self::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Adds an edge and returns its id. Weights must be positive.
    pub fn add_edge(&mut self, u: usize, v: usize, w: W) -> Result<usize, GraphError> {
        if !w.above_zero() {
            return Err(GraphError::NonPositiveWeight(u, v));
        }
        self.push_edge(u, v, w)
    }

    fn push_edge(&mut self, u: usize, v: usize, w: W) -> Result<usize, GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, w });
        self.incident[u].push(id);
        self.incident[v].push(id);
        Ok(id)
    }

    /// Appends `k` isolated nodes and returns the id of the first one.
    pub fn add_nodes(&mut self, k: usize) -> usize {
        let first = self.n;
        self.n += k;
        self.incident.resize(self.n, Vec::new());
        first
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge<W> {
        &self.edges[id]
    }

    /// Edge ids incident to `v`, in insertion order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// `(neighbor, weight)` pairs of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &W)> + '_ {
        self.incident[v].iter().map(move |&e| {
            let edge = &self.edges[e];
            (edge.other(v), &edge.w)
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if self.incident[u].len() <= self.incident[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.incident[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e].other(a) == b)
    }

    pub fn total_weight(&self) -> W {
        self.edges.iter().fold(W::zero(), |acc, e| acc + e.w.clone())
    }

    /// Same structure with every weight passed through `f`; no sign check.
    pub fn map_weights<W2: Weight>(&self, mut f: impl FnMut(&W) -> W2) -> WeightedGraph<W2> {
        WeightedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge { u: e.u, v: e.v, w: f(&e.w) })
                .collect(),
            incident: self.incident.clone(),
        }
    }

    pub fn check_node(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange { node: v, n: self.n })
        }
    }

    pub fn check_partition(&self, p: &Partition) -> Result<(), GraphError> {
        if p.len() == self.n {
            Ok(())
        } else {
            Err(GraphError::LengthMismatch { expected: self.n, got: p.len() })
        }
    }
}

/// A 2-coloring of the nodes: `false` is white (0), `true` is black (1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    bits: Vec<bool>,
}

impl Partition {
    /// All-white partition on `n` nodes.
    pub fn new(n: usize) -> Self {
        Partition { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Partition { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn color(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn set(&mut self, v: usize, c: bool) {
        self.bits[v] = c;
    }

    pub fn flip(&mut self, v: usize) {
        self.bits[v] = !self.bits[v];
    }

    pub fn flipped(&self, v: usize) -> Self {
        let mut p = self.clone();
        p.flip(v);
        p
    }

    pub fn complement(&self) -> Self {
        Partition { bits: self.bits.iter().map(|b| !b).collect() }
    }

    /// Representative of `{p, complement(p)}` with node 0 white.
    pub fn canonical(&self) -> Self {
        if self.bits.first() == Some(&true) {
            self.complement()
        } else {
            self.clone()
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid partition character {ch:?} at position {pos}")]
pub struct PartitionParseError {
    pub pos: usize,
    pub ch: char,
}

impl FromStr for Partition {
    type Err = PartitionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(PartitionParseError { pos, ch }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Partition::from_bits)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn cut_weight<W: Weight>(g: &WeightedGraph<W>, p: &Partition) -> Result<W, GraphError> {
    g.check_partition(p)?;
    Ok(g.edges()
        .iter()
        .filter(|e| p.color(e.u) != p.color(e.v))
        .fold(W::zero(), |acc, e| acc + e.w.clone()))
}

/// Change of the cut weight if `v` switches sides.
pub fn gain<W: Weight>(g: &WeightedGraph<W>, p: &Partition, v: usize) -> Result<W, GraphError> {
    g.check_partition(p)?;
    g.check_node(v)?;
    Ok(local_gain(g, p, v))
}

pub(crate) fn local_gain<W: Weight>(g: &WeightedGraph<W>, p: &Partition, v: usize) -> W {
    let cv = p.color(v);
    g.neighbors(v).fold(W::zero(), |acc, (u, w)| {
        if p.color(u) == cv {
            acc + w.clone()
        } else {
            acc - w.clone()
        }
    })
}

/// Nodes with positive gain, ascending.
pub fn unhappy_nodes<W: Weight>(g: &WeightedGraph<W>, p: &Partition) -> Result<Vec<usize>, GraphError> {
    g.check_partition(p)?;
    Ok((0..g.node_count())
        .filter(|&v| local_gain(g, p, v).above_zero())
        .collect())
}

pub fn is_local_optimum<W: Weight>(g: &WeightedGraph<W>, p: &Partition) -> Result<bool, GraphError> {
    Ok(unhappy_nodes(g, p)?.is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeType {
    TypeI,
    TypeIII,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeClass<W> {
    pub kind: NodeType,
    /// The four heaviest incident weights, descending, padded with zeros.
    pub top: [W; 4],
    pub degree: usize,
}

impl<W> NodeClass<W> {
    /// Set when the node has more than four incident edges.
    pub fn over_degree(&self) -> bool {
        self.degree > 4
    }
}

pub fn classify_node<W: Weight>(g: &WeightedGraph<W>, v: usize) -> Result<NodeClass<W>, GraphError> {
    g.check_node(v)?;
    let mut ws: Vec<W> = g.neighbors(v).map(|(_, w)| w.clone()).collect();
    ws.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let degree = ws.len();
    let pick = |i: usize| ws.get(i).cloned().unwrap_or_else(W::zero);
    let top = [pick(0), pick(1), pick(2), pick(3)];
    let kind = if degree > 4 {
        NodeType::Other
    } else {
        let [a, b, c, d] = top.clone();
        if a > b.clone() + c.clone() + d.clone() {
            NodeType::TypeI
        } else if a + d < b + c {
            NodeType::TypeIII
        } else {
            NodeType::Other
        }
    };
    Ok(NodeClass { kind, top, degree })
}

pub fn max_degree<W: Weight>(g: &WeightedGraph<W>) -> usize {
    (0..g.node_count()).map(|v| g.degree(v)).max().unwrap_or(0)
}
