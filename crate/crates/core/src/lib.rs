//! Local Max-Cut under the FLIP neighborhood: exact local search, the
//! circuit-to-cut construction, comparing-node degradation to degree five,
//! and smoothed-analysis experiments.

pub mod circuit;
pub mod circuit2cut;
pub mod comparing;
pub mod flip;
pub mod graph;
pub mod io;
pub mod smoothed;

pub use circuit::{Circuit, Gate, NormalForm, Src};
pub use circuit2cut::{attach_biaser, compile_cvp, compile_looker, CompiledGraph, Polarity};
pub use comparing::{comparing_spec, degrade, semantics, verify_theorem1, ComparingSpec, DegradedGadget};
pub use flip::{enumerate_local_optima, pinned_local_optima, run_flip, FlipTrace, PivotRule};
pub use graph::{cut_weight, gain, is_local_optimum, Graph, Partition, Weight, WeightedGraph};
pub use num_bigint::BigInt;
