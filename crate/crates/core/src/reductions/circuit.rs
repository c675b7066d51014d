use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit has no inputs")]
    NoInputs,
    #[error("name {0:?} defined twice")]
    DuplicateName(String),
    #[error("gate {gate:?} uses {operand:?}, which is not an input or an earlier gate")]
    UndefinedOperand { gate: String, operand: String },
    #[error("output {0:?} is not defined")]
    UnknownOutput(String),
    #[error("no value given for input {0:?}")]
    MissingInput(String),
    #[error("assignment has {got} values for {expected} inputs")]
    AssignmentLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    And2,
    Or2,
}

impl GateKind {
    pub fn token(self) -> &'static str {
        match self {
            GateKind::And2 => "and",
            GateKind::Or2 => "or",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub name: String,
    pub kind: GateKind,
    pub operands: [String; 2],
}

impl Gate {
    pub fn new(name: impl Into<String>, kind: GateKind, a: impl Into<String>, b: impl Into<String>) -> Self {
        Gate {
            name: name.into(),
            kind,
            operands: [a.into(), b.into()],
        }
    }
}

/// A wire of a circuit: one of its inputs or the output of one of its gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    Input(usize),
    Gate(usize),
}

/// Acyclic fan-in-2 AND/OR netlist. Every operand names an input or an
/// earlier gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCircuit {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    output: String,
    operands: Vec<[Signal; 2]>,
    output_signal: Signal,
}

impl MonotoneCircuit {
    pub fn new(inputs: Vec<String>, gates: Vec<Gate>, output: impl Into<String>) -> Result<Self, CircuitError> {
        let output = output.into();
        if inputs.is_empty() {
            return Err(CircuitError::NoInputs);
        }
        let mut names: HashMap<&str, Signal> = HashMap::new();
        for (i, name) in inputs.iter().enumerate() {
            if names.insert(name, Signal::Input(i)).is_some() {
                return Err(CircuitError::DuplicateName(name.clone()));
            }
        }
        let mut operands = Vec::with_capacity(gates.len());
        for (g, gate) in gates.iter().enumerate() {
            let resolve = |operand: &String| {
                names
                    .get(operand.as_str())
                    .copied()
                    .ok_or_else(|| CircuitError::UndefinedOperand {
                        gate: gate.name.clone(),
                        operand: operand.clone(),
                    })
            };
            operands.push([resolve(&gate.operands[0])?, resolve(&gate.operands[1])?]);
            if names.insert(&gate.name, Signal::Gate(g)).is_some() {
                return Err(CircuitError::DuplicateName(gate.name.clone()));
            }
        }
        let output_signal = *names
            .get(output.as_str())
            .ok_or_else(|| CircuitError::UnknownOutput(output.clone()))?;
        Ok(MonotoneCircuit {
            inputs,
            gates,
            output,
            operands,
            output_signal,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn output_signal(&self) -> Signal {
        self.output_signal
    }

    /// Resolved operands of gate `g`.
    pub fn operands(&self, g: usize) -> [Signal; 2] {
        self.operands[g]
    }

    /// How many operand slots read each signal, plus one for the output.
    pub fn fanout(&self) -> (Vec<usize>, Vec<usize>) {
        let mut inputs = vec![0; self.inputs.len()];
        let mut gates = vec![0; self.gates.len()];
        let mut bump = |s: Signal| match s {
            Signal::Input(i) => inputs[i] += 1,
            Signal::Gate(g) => gates[g] += 1,
        };
        for ops in &self.operands {
            ops.iter().copied().for_each(&mut bump);
        }
        bump(self.output_signal);
        (inputs, gates)
    }

    /// Evaluates with input values given in declaration order.
    pub fn eval_bits(&self, inputs: &[bool]) -> Result<bool, CircuitError> {
        if inputs.len() != self.inputs.len() {
            return Err(CircuitError::AssignmentLength {
                got: inputs.len(),
                expected: self.inputs.len(),
            });
        }
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |values: &[bool], s: Signal| match s {
            Signal::Input(i) => inputs[i],
            Signal::Gate(g) => values[g],
        };
        for (gate, [a, b]) in self.gates.iter().zip(&self.operands) {
            let (x, y) = (read(&values, *a), read(&values, *b));
            values.push(match gate.kind {
                GateKind::And2 => x && y,
                GateKind::Or2 => x || y,
            });
        }
        Ok(read(&values, self.output_signal))
    }

    /// Evaluates gate by gate; every input must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, bool>) -> Result<bool, CircuitError> {
        let bits = self
            .inputs
            .iter()
            .map(|name| {
                assignment
                    .get(name)
                    .copied()
                    .ok_or_else(|| CircuitError::MissingInput(name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.eval_bits(&bits)
    }

    /// Input values encoded by bit `i` of `mask`, in declaration order.
    pub fn assignment_from_mask(&self, mask: u64) -> Vec<bool> {
        (0..self.inputs.len()).map(|i| (mask >> i) & 1 == 1).collect()
    }
}

/// Serializes to the netlist text format.
impl fmt::Display for MonotoneCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.inputs {
            writeln!(f, "input {name}")?;
        }
        for gate in &self.gates {
            writeln!(
                f,
                "{} {} {} {}",
                gate.kind.token(),
                gate.name,
                gate.operands[0],
                gate.operands[1]
            )?;
        }
        writeln!(f, "output {}", self.output)
    }
}
