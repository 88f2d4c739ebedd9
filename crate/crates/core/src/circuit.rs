//! NOR/NOT circuits and the CIRCUITFLIP local search problem.
//!
//! Gates are numbered `G_1..G_N` with every gate reading only inputs or gates
//! of larger index, so evaluation runs from `G_N` down to `G_1`. The outputs
//! are listed least significant first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Src {
    /// Circuit input, 0-based.
    Input(usize),
    /// Gate `G_i`, 1-based.
    Gate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    Nor(Src, Src),
    Not(Src),
}

impl Gate {
    pub fn sources(&self) -> Vec<Src> {
        match *self {
            Gate::Nor(a, b) => vec![a, b],
            Gate::Not(a) => vec![a],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate G_{gate} refers to {src:?}, which does not exist")]
    Dangling { gate: usize, src: Src },
    #[error("output refers to missing gate G_{0}")]
    DanglingOutput(usize),
    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("gate G_{gate} reads G_{src}, which is not evaluated before it")]
    NotTopological { gate: usize, src: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalForm {
    /// NOR gates only, every input read exactly once.
    NorOnly,
    /// Holder NOTs on the inputs, fanout-one NORs, fanout-two NOTs, NOT outputs.
    Compilable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    DuplicateInputs { gate: usize },
    TopologicalOrder { gate: usize, source: usize },
    NotNor { gate: usize },
    InputOccurrences { input: usize, count: usize },
    NorFanout { gate: usize, fanout: usize },
    NotFanout { gate: usize, fanout: usize },
    HolderShape { gate: usize },
    HolderFanout { gate: usize, fanout: usize },
    InputOutsideHolder { gate: usize },
    OutputShape { gate: usize },
    OutputFanout { gate: usize, fanout: usize },
    OutputOrder,
    HolderOutputOverlap,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateInputs { gate } => write!(f, "duplicate inputs at G_{gate}"),
            Violation::TopologicalOrder { gate, source } => {
                write!(f, "topological order: G_{gate} reads G_{source}")
            }
            Violation::NotNor { gate } => write!(f, "G_{gate} is not a NOR gate"),
            Violation::InputOccurrences { input, count } => {
                write!(f, "input x{} occurs {count} times", input + 1)
            }
            Violation::NorFanout { gate, fanout } => write!(f, "NOR gate G_{gate} has fanout {fanout}"),
            Violation::NotFanout { gate, fanout } => write!(f, "NOT gate G_{gate} has fanout {fanout}"),
            Violation::HolderShape { gate } => {
                write!(f, "input-holding gate G_{gate} is not a NOT of an input")
            }
            Violation::HolderFanout { gate, fanout } => {
                write!(f, "input-holding gate G_{gate} has fanout {fanout}")
            }
            Violation::InputOutsideHolder { gate } => write!(f, "G_{gate} reads an input directly"),
            Violation::OutputShape { gate } => write!(f, "output gate G_{gate} is not a NOT gate"),
            Violation::OutputFanout { gate, fanout } => write!(f, "output gate G_{gate} has fanout {fanout}"),
            Violation::OutputOrder => write!(f, "outputs are not G_1..G_m in order"),
            Violation::HolderOutputOverlap => write!(f, "too few gates to separate holders and outputs"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl Circuit {
    /// `gates[i - 1]` is `G_i`; `outputs` holds gate indices, least significant first.
    pub fn new(inputs: usize, gates: Vec<Gate>, outputs: Vec<usize>) -> Result<Self, CircuitError> {
        let n_gates = gates.len();
        for (k, g) in gates.iter().enumerate() {
            for s in g.sources() {
                let ok = match s {
                    Src::Input(j) => j < inputs,
                    Src::Gate(j) => (1..=n_gates).contains(&j),
                };
                if !ok {
                    return Err(CircuitError::Dangling { gate: k + 1, src: s });
                }
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| !(1..=n_gates).contains(&o)) {
            return Err(CircuitError::DanglingOutput(o));
        }
        Ok(Circuit { inputs, gates, outputs })
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Gate `G_i`, 1-based.
    pub fn gate(&self, i: usize) -> &Gate {
        &self.gates[i - 1]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Indices of the input-holding gates, `G_{N-n+1}..G_N`.
    pub fn holders(&self) -> std::ops::RangeInclusive<usize> {
        let n = self.gate_count();
        (n + 1 - self.inputs.min(n))..=n
    }

    /// Consumers of every gate: `fanout()[i - 1]` counts the reads of `G_i`.
    pub fn fanout(&self) -> Vec<usize> {
        let mut out = vec![0; self.gate_count()];
        for g in &self.gates {
            for s in g.sources() {
                if let Src::Gate(j) = s {
                    out[j - 1] += 1;
                }
            }
        }
        out
    }

    pub fn validate_normal_form(&self, mode: NormalForm) -> Vec<Violation> {
        let mut v = Vec::new();
        let n_gates = self.gate_count();
        for i in 1..=n_gates {
            let g = self.gate(i);
            if let Gate::Nor(a, b) = g {
                if a == b {
                    v.push(Violation::DuplicateInputs { gate: i });
                }
            }
            for s in g.sources() {
                if let Src::Gate(j) = s {
                    if j <= i {
                        v.push(Violation::TopologicalOrder { gate: i, source: j });
                    }
                }
            }
        }
        let mut occ = vec![0usize; self.inputs];
        for g in &self.gates {
            for s in g.sources() {
                if let Src::Input(j) = s {
                    occ[j] += 1;
                }
            }
        }
        for (input, &count) in occ.iter().enumerate() {
            if count != 1 {
                v.push(Violation::InputOccurrences { input, count });
            }
        }
        match mode {
            NormalForm::NorOnly => {
                for i in 1..=n_gates {
                    if !matches!(self.gate(i), Gate::Nor(..)) {
                        v.push(Violation::NotNor { gate: i });
                    }
                }
            }
            NormalForm::Compilable => self.compilable_violations(&mut v),
        }
        v
    }

    fn compilable_violations(&self, v: &mut Vec<Violation>) {
        let n_gates = self.gate_count();
        let m = self.outputs.len();
        if n_gates < self.inputs + m {
            v.push(Violation::HolderOutputOverlap);
            return;
        }
        if self.outputs != (1..=m).collect::<Vec<_>>() {
            v.push(Violation::OutputOrder);
        }
        let fan = self.fanout();
        let holders = self.holders();
        for i in 1..=n_gates {
            let g = self.gate(i);
            let fanout = fan[i - 1];
            if holders.contains(&i) {
                if !matches!(g, Gate::Not(Src::Input(_))) {
                    v.push(Violation::HolderShape { gate: i });
                }
                if fanout != 1 {
                    v.push(Violation::HolderFanout { gate: i, fanout });
                }
                continue;
            }
            if g.sources().iter().any(|s| matches!(s, Src::Input(_))) {
                v.push(Violation::InputOutsideHolder { gate: i });
            }
            if i <= m {
                if !matches!(g, Gate::Not(_)) {
                    v.push(Violation::OutputShape { gate: i });
                }
                if fanout != 0 {
                    v.push(Violation::OutputFanout { gate: i, fanout });
                }
                continue;
            }
            match g {
                Gate::Nor(..) if fanout != 1 => v.push(Violation::NorFanout { gate: i, fanout }),
                Gate::Not(_) if fanout > 2 => v.push(Violation::NotFanout { gate: i, fanout }),
                _ => {}
            }
        }
    }

    /// Value of every gate, `eval(x)[i - 1]` for `G_i`.
    pub fn eval(&self, x: &[bool]) -> Result<Vec<bool>, CircuitError> {
        self.eval_forced(x, &[])
    }

    /// Like [`Circuit::eval`] with selected gates overridden by fixed values.
    pub fn eval_forced(&self, x: &[bool], forced: &[(usize, bool)]) -> Result<Vec<bool>, CircuitError> {
        if x.len() != self.inputs {
            return Err(CircuitError::InputLength { expected: self.inputs, got: x.len() });
        }
        let n_gates = self.gate_count();
        let mut val = vec![false; n_gates];
        for i in (1..=n_gates).rev() {
            if let Some(&(_, b)) = forced.iter().find(|(g, _)| *g == i) {
                val[i - 1] = b;
                continue;
            }
            let read = |s: Src| -> Result<bool, CircuitError> {
                match s {
                    Src::Input(j) => Ok(x[j]),
                    Src::Gate(j) if j > i => Ok(val[j - 1]),
                    Src::Gate(j) => Err(CircuitError::NotTopological { gate: i, src: j }),
                }
            };
            val[i - 1] = match *self.gate(i) {
                Gate::Nor(a, b) => !(read(a)? || read(b)?),
                Gate::Not(a) => !read(a)?,
            };
        }
        Ok(val)
    }

    /// Outputs when the input-holding gates carry `y` (in `G_{N-n+1}..G_N` order).
    pub fn eval_from_holders(&self, y: &[bool]) -> Result<Vec<bool>, CircuitError> {
        let holders: Vec<usize> = self.holders().collect();
        if y.len() != holders.len() {
            return Err(CircuitError::InputLength { expected: holders.len(), got: y.len() });
        }
        let forced: Vec<(usize, bool)> = holders.into_iter().zip(y.iter().copied()).collect();
        let val = self.eval_forced(&vec![false; self.inputs], &forced)?;
        Ok(self.output_bits(&val))
    }

    /// Output bits, least significant first.
    pub fn output_bits(&self, values: &[bool]) -> Vec<bool> {
        self.outputs.iter().map(|&o| values[o - 1]).collect()
    }

    /// The outputs read as a binary number.
    pub fn cf_objective(&self, x: &[bool]) -> Result<BigUint, CircuitError> {
        let val = self.eval(x)?;
        let mut acc = BigUint::zero();
        for &b in self.output_bits(&val).iter().rev() {
            acc <<= 1u32;
            if b {
                acc += 1u32;
            }
        }
        Ok(acc)
    }

    /// First single-bit flip (lowest index) with a larger objective.
    pub fn cf_improving_neighbor(&self, x: &[bool]) -> Result<Option<Vec<bool>>, CircuitError> {
        let here = self.cf_objective(x)?;
        for i in 0..x.len() {
            let mut y = x.to_vec();
            y[i] = !y[i];
            if self.cf_objective(&y)? > here {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }
}

/// Random circuit in compilable normal form, or `None` if sampling kept failing.
///
/// `interior` counts the gates strictly between holders and outputs.
pub fn random_compilable_circuit<R: Rng>(
    rng: &mut R,
    inputs: usize,
    interior: usize,
    outputs: usize,
) -> Option<Circuit> {
    let n_gates = inputs + interior + outputs;
    for _ in 0..1000 {
        let mut gates = vec![Gate::Not(Src::Input(0)); n_gates];
        let mut perm: Vec<usize> = (0..inputs).collect();
        perm.shuffle(rng);
        for (k, &x) in perm.iter().enumerate() {
            gates[n_gates - inputs + k] = Gate::Not(Src::Input(x));
        }
        let mut fan = vec![0usize; n_gates];
        let cap = |i: usize, gates: &[Gate]| -> usize {
            if i > n_gates - inputs {
                1
            } else {
                match gates[i - 1] {
                    Gate::Nor(..) => 1,
                    Gate::Not(_) => 2,
                }
            }
        };
        let mut ok = true;
        for i in (1..=n_gates - inputs).rev() {
            let open: Vec<usize> = (i + 1..=n_gates).filter(|&j| fan[j - 1] < cap(j, &gates)).collect();
            if open.is_empty() {
                ok = false;
                break;
            }
            let nor = i > outputs && open.len() >= 2 && rng.random_bool(0.5);
            if nor {
                let mut pick = open.clone();
                pick.shuffle(rng);
                let (a, b) = (pick[0], pick[1]);
                fan[a - 1] += 1;
                fan[b - 1] += 1;
                gates[i - 1] = Gate::Nor(Src::Gate(a), Src::Gate(b));
            } else {
                let a = open[rng.random_range(0..open.len())];
                fan[a - 1] += 1;
                gates[i - 1] = Gate::Not(Src::Gate(a));
            }
        }
        if !ok {
            continue;
        }
        let c = Circuit::new(inputs, gates, (1..=outputs).collect()).ok()?;
        if c.validate_normal_form(NormalForm::Compilable).is_empty() {
            return Some(c);
        }
    }
    None
}

/// Every bit vector of length `n`, in counting order with bit 0 first.
pub fn all_assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |mask| (0..n).map(|i| (mask >> i) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn not_chain() -> Circuit {
        // G_3 = NOT x1, G_2 = NOT G_3, G_1 = NOT G_2
        Circuit::new(
            1,
            vec![Gate::Not(Src::Gate(2)), Gate::Not(Src::Gate(3)), Gate::Not(Src::Input(0))],
            vec![1],
        )
        .unwrap()
    }

    #[test]
    fn nor_truth_table() {
        let c = Circuit::new(2, vec![Gate::Nor(Src::Input(0), Src::Input(1))], vec![1]).unwrap();
        assert_eq!(c.eval(&[false, false]).unwrap(), vec![true]);
        assert_eq!(c.eval(&[true, false]).unwrap(), vec![false]);
        let c = Circuit::new(
            2,
            vec![Gate::Not(Src::Gate(2)), Gate::Nor(Src::Input(0), Src::Input(1))],
            vec![1],
        )
        .unwrap();
        assert!(!c.eval(&[false, false]).unwrap()[0]);
    }

    #[test]
    fn normal_form_checks() {
        assert!(not_chain().validate_normal_form(NormalForm::Compilable).is_empty());
        let dup = Circuit::new(1, vec![Gate::Nor(Src::Input(0), Src::Input(0))], vec![1]).unwrap();
        let v = dup.validate_normal_form(NormalForm::NorOnly);
        assert!(v.iter().any(|x| x.to_string().contains("duplicate inputs")));
        let back = Circuit::new(1, vec![Gate::Not(Src::Input(0)), Gate::Not(Src::Gate(1))], vec![1]).unwrap();
        let v = back.validate_normal_form(NormalForm::Compilable);
        assert!(v.iter().any(|x| x.to_string().contains("topological order")));
        assert!(back.eval(&[true]).is_err());
    }

    #[test]
    fn objective_examples() {
        // outputs (G_1, G_2, G_3) = (1, 0, 1)
        let c = Circuit::new(
            1,
            vec![
                Gate::Not(Src::Gate(5)),
                Gate::Not(Src::Gate(4)),
                Gate::Not(Src::Gate(5)),
                Gate::Not(Src::Gate(5)),
                Gate::Not(Src::Input(0)),
            ],
            vec![1, 2, 3],
        )
        .unwrap();
        assert_eq!(c.cf_objective(&[true]).unwrap(), BigUint::from(5u32));
        assert_eq!(c.cf_objective(&[false]).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn identity_neighbors() {
        let c = not_chain();
        // three NOTs compute the negation, so x = 0 is optimal
        assert_eq!(c.cf_improving_neighbor(&[false]).unwrap(), None);
        assert_eq!(c.cf_improving_neighbor(&[true]).unwrap(), Some(vec![false]));
    }

    #[test]
    fn holders_drive_outputs() {
        let c = not_chain();
        assert_eq!(c.eval_from_holders(&[true]).unwrap(), vec![true]);
        assert_eq!(c.eval_from_holders(&[false]).unwrap(), vec![false]);
    }

    #[test]
    fn generator_output_is_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let c = random_compilable_circuit(&mut rng, 2, 2, 1).unwrap();
            assert!(c.validate_normal_form(NormalForm::Compilable).is_empty());
        }
    }
}
