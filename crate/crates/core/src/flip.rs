//! FLIP local search and exhaustive local-optimum enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{cut_weight, local_gain, GraphError, Partition, Weight, WeightedGraph};

/// Default cap on the number of free nodes in an enumeration.
pub const ENUM_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PivotRule {
    /// Lowest-id unhappy node.
    First,
    /// Largest gain, lowest id among equal gains.
    Best,
    /// Uniform over the unhappy nodes.
    Random,
}

impl fmt::Display for PivotRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PivotRule::First => "first",
            PivotRule::Best => "best",
            PivotRule::Random => "random",
        })
    }
}

impl FromStr for PivotRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first" => Ok(PivotRule::First),
            "best" => Ok(PivotRule::Best),
            "random" => Ok(PivotRule::Random),
            _ => Err(format!("unknown pivot rule {s:?} (expected first, best or random)")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlipError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{free} free nodes exceed the enumeration cap of {cap}")]
    TooLarge { free: usize, cap: usize },
    #[error("node {0} is pinned twice")]
    DuplicatePin(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlipTrace<W> {
    pub initial: Partition,
    /// Flipped node and its gain at the time of the flip.
    pub steps: Vec<(usize, W)>,
    pub final_partition: Partition,
    pub step_count: usize,
    pub reached_limit: bool,
}

impl<W: Weight> FlipTrace<W> {
    pub fn min_gain(&self) -> Option<&W> {
        self.steps
            .iter()
            .map(|(_, g)| g)
            .min_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal))
    }
}

/// `2 · n² · max(1, log2(total weight))`.
pub fn default_step_limit<W: Weight>(g: &WeightedGraph<W>) -> usize {
    let n = g.node_count() as f64;
    let total = g.total_weight();
    let lg = if total.above_zero() { total.log2().max(1.0) } else { 1.0 };
    let limit = 2.0 * n * n * lg;
    if limit >= usize::MAX as f64 {
        usize::MAX
    } else {
        limit.ceil() as usize
    }
}

/// Gains kept current under single flips.
struct SearchState<'g, W> {
    g: &'g WeightedGraph<W>,
    p: Partition,
    gains: Vec<W>,
    unhappy: BTreeSet<usize>,
}

impl<'g, W: Weight> SearchState<'g, W> {
    fn new(g: &'g WeightedGraph<W>, p: Partition) -> Self {
        let gains: Vec<W> = (0..g.node_count()).map(|v| local_gain(g, &p, v)).collect();
        let unhappy = (0..g.node_count()).filter(|&v| gains[v].above_zero()).collect();
        SearchState { g, p, gains, unhappy }
    }

    fn refresh(&mut self, v: usize) {
        self.gains[v] = local_gain(self.g, &self.p, v);
        if self.gains[v].above_zero() {
            self.unhappy.insert(v);
        } else {
            self.unhappy.remove(&v);
        }
    }

    fn flip(&mut self, v: usize) {
        self.p.flip(v);
        self.refresh(v);
        let nbrs: Vec<usize> = self.g.neighbors(v).map(|(u, _)| u).collect();
        for u in nbrs {
            self.refresh(u);
        }
    }

    fn pick(&self, rule: PivotRule, rng: &mut ChaCha8Rng) -> Option<usize> {
        match rule {
            PivotRule::First => self.unhappy.first().copied(),
            PivotRule::Best => {
                let mut best: Option<usize> = None;
                for &v in &self.unhappy {
                    if best.is_none_or(|b| self.gains[v] > self.gains[b]) {
                        best = Some(v);
                    }
                }
                best
            }
            PivotRule::Random => {
                if self.unhappy.is_empty() {
                    None
                } else {
                    let k = rng.random_range(0..self.unhappy.len());
                    self.unhappy.iter().nth(k).copied()
                }
            }
        }
    }
}

/// Flips rule-chosen unhappy nodes until none is left or `step_limit` flips were made.
pub fn run_flip<W: Weight>(
    g: &WeightedGraph<W>,
    p0: &Partition,
    rule: PivotRule,
    step_limit: usize,
    seed: u64,
) -> Result<FlipTrace<W>, FlipError> {
    g.check_partition(p0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = SearchState::new(g, p0.clone());
    let mut steps = Vec::new();
    let mut reached_limit = false;
    loop {
        if st.unhappy.is_empty() {
            break;
        }
        if steps.len() >= step_limit {
            reached_limit = true;
            break;
        }
        let v = st.pick(rule, &mut rng).expect("unhappy set is non-empty");
        steps.push((v, st.gains[v].clone()));
        st.flip(v);
    }
    Ok(FlipTrace {
        initial: p0.clone(),
        step_count: steps.len(),
        steps,
        final_partition: st.p,
        reached_limit,
    })
}

/// Cut values along a trace, starting with the initial one.
pub fn trace_cuts<W: Weight>(g: &WeightedGraph<W>, t: &FlipTrace<W>) -> Result<Vec<W>, FlipError> {
    let mut cut = cut_weight(g, &t.initial)?;
    let mut out = vec![cut.clone()];
    for (_, gain) in &t.steps {
        cut = cut + gain.clone();
        out.push(cut.clone());
    }
    Ok(out)
}

/// All local optima with node 0 white, in lexicographic order.
pub fn enumerate_local_optima<W: Weight>(g: &WeightedGraph<W>) -> Result<Vec<Partition>, FlipError> {
    enumerate_local_optima_capped(g, ENUM_CAP)
}

pub fn enumerate_local_optima_capped<W: Weight>(
    g: &WeightedGraph<W>,
    cap: usize,
) -> Result<Vec<Partition>, FlipError> {
    let n = g.node_count();
    if n == 0 {
        return Ok(vec![Partition::new(0)]);
    }
    let mut fixed = vec![None; n];
    fixed[0] = Some(false);
    scan(g, &fixed, &vec![false; n], cap)
}

/// Extensions of `pins` in which every non-pinned node is happy, lexicographic.
pub fn pinned_local_optima<W: Weight>(
    g: &WeightedGraph<W>,
    pins: &[(usize, bool)],
) -> Result<Vec<Partition>, FlipError> {
    pinned_local_optima_capped(g, pins, ENUM_CAP)
}

pub fn pinned_local_optima_capped<W: Weight>(
    g: &WeightedGraph<W>,
    pins: &[(usize, bool)],
    cap: usize,
) -> Result<Vec<Partition>, FlipError> {
    let n = g.node_count();
    let mut fixed = vec![None; n];
    for &(v, c) in pins {
        g.check_node(v)?;
        if fixed[v].is_some() {
            return Err(FlipError::DuplicatePin(v));
        }
        fixed[v] = Some(c);
    }
    let exempt: Vec<bool> = fixed.iter().map(|f| f.is_some()).collect();
    scan(g, &fixed, &exempt, cap)
}

fn scan<W: Weight>(
    g: &WeightedGraph<W>,
    fixed: &[Option<bool>],
    exempt: &[bool],
    cap: usize,
) -> Result<Vec<Partition>, FlipError> {
    let free: Vec<usize> = (0..g.node_count()).filter(|&v| fixed[v].is_none()).collect();
    if free.len() > cap {
        return Err(FlipError::TooLarge { free: free.len(), cap });
    }
    // exact integer weights that fit comfortably take the fast path
    let small: Option<Vec<i128>> = g
        .edges()
        .iter()
        .map(|e| e.w.to_i128().filter(|w| w.abs() < (1i128 << 100)))
        .collect();
    let fits = small
        .as_ref()
        .is_some_and(|ws| ws.iter().map(|w| w.unsigned_abs()).sum::<u128>() < (1u128 << 120));
    let mut out = match small {
        Some(ws) if fits => {
            let h = g.map_weights({
                let mut it = ws.into_iter();
                move |_| it.next().expect("one weight per edge")
            });
            gray_scan(&h, fixed, exempt, &free)
        }
        _ => gray_scan(g, fixed, exempt, &free),
    };
    out.sort();
    Ok(out)
}

/// Walks all colorings of `free` in Gray-code order with incremental gains.
fn gray_scan<W: Weight>(
    g: &WeightedGraph<W>,
    fixed: &[Option<bool>],
    exempt: &[bool],
    free: &[usize],
) -> Vec<Partition> {
    let n = g.node_count();
    let mut p = Partition::from_bits(fixed.iter().map(|f| f.unwrap_or(false)).collect());
    let adj: Vec<Vec<(usize, W)>> = (0..n)
        .map(|v| g.neighbors(v).map(|(u, w)| (u, w.clone())).collect())
        .collect();
    let mut gains: Vec<W> = (0..n).map(|v| local_gain(g, &p, v)).collect();
    let bad_of = |v: usize, gains: &[W]| !exempt[v] && gains[v].above_zero();
    let mut bad = (0..n).filter(|&v| bad_of(v, &gains)).count();
    let mut out = Vec::new();
    let total: u64 = 1u64 << free.len();
    let two = W::one() + W::one();
    for t in 0..total {
        let optimal = if W::EXACT {
            bad == 0
        } else {
            (0..n).all(|v| exempt[v] || !local_gain(g, &p, v).above_zero())
        };
        if optimal {
            out.push(p.clone());
        }
        if t + 1 == total {
            break;
        }
        let v = free[(t + 1).trailing_zeros() as usize];
        let cv = p.color(v);
        for (u, w) in &adj[v] {
            let was = bad_of(*u, &gains);
            let delta = two.clone() * w.clone();
            if p.color(*u) == cv {
                gains[*u] = gains[*u].clone() - delta;
            } else {
                gains[*u] = gains[*u].clone() + delta;
            }
            let now = bad_of(*u, &gains);
            bad = bad + now as usize - was as usize;
        }
        let was = bad_of(v, &gains);
        gains[v] = -gains[v].clone();
        p.flip(v);
        let now = bad_of(v, &gains);
        bad = bad + now as usize - was as usize;
    }
    out
}
