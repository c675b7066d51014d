use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Backend, MonotoneCircuit};
use crate::dynamics::{decide_per, DynamicsError, PerOptions};

/// Largest input count verified exhaustively unless overridden.
pub const DEFAULT_EXHAUSTION_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerificationError {
    #[error(
        "circuit has {inputs} inputs, above the exhaustion bound of {bound}; verify a sample of assignments instead"
    )]
    TooManyInputs { inputs: usize, bound: usize },
    #[error("assignment {assignment}: {error}")]
    Instance { assignment: String, error: DynamicsError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Input values as a bit string in declaration order.
    pub assignment: String,
    pub circuit_value: bool,
    pub reachable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub backend: Backend,
    pub inputs: usize,
    pub gates: usize,
    pub vertices: usize,
    pub max_degree: usize,
    pub assignments_tested: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} assignments, {} mismatches",
            self.assignments_tested,
            self.mismatches.len()
        )
    }
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Compiles `circuit` and compares the decided reachability answer with the
/// circuit value on every input assignment.
pub fn verify_reduction(
    circuit: &MonotoneCircuit,
    backend: Backend,
    exhaustion_bound: usize,
) -> Result<VerificationReport, VerificationError> {
    let inputs = circuit.inputs().len();
    if inputs > exhaustion_bound || inputs >= 63 {
        return Err(VerificationError::TooManyInputs {
            inputs,
            bound: exhaustion_bound,
        });
    }
    let compiled = backend.compile(circuit);
    let options = PerOptions::default();
    let results: Vec<Option<Mismatch>> = (0..1u64 << inputs)
        .into_par_iter()
        .map(|mask| {
            let bits = circuit.assignment_from_mask(mask);
            let expected = circuit.eval_bits(&bits).expect("assignment sized from the circuit");
            let answer = compiled
                .instantiate(circuit, &bits)
                .and_then(|inst| decide_per(&inst, &options))
                .map_err(|error| VerificationError::Instance {
                    assignment: bit_string(&bits),
                    error,
                })?;
            Ok((answer.reachable != expected).then(|| Mismatch {
                assignment: bit_string(&bits),
                circuit_value: expected,
                reachable: answer.reachable,
            }))
        })
        .collect::<Result<_, VerificationError>>()?;
    Ok(VerificationReport {
        backend,
        inputs,
        gates: circuit.gates().len(),
        vertices: compiled.network.n(),
        max_degree: compiled.network.graph().max_degree(),
        assignments_tested: results.len(),
        mismatches: results.into_iter().flatten().collect(),
    })
}
