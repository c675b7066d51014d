//! Circuit simulation by an AND/OR network under a sequential schedule.
//!
//! Layout:
//! - input `x`: two adjacent OR vertices, both initially active iff `x = 1`.
//!   The pair sustains itself, so a true input stays active forever and a
//!   false one stays passive.
//! - gate `g`: an initially active OR holder `h_g` plus AND evaluators. An
//!   `And2` gate has one evaluator adjacent to both operand signals and
//!   `h_g`; an `Or2` gate has one evaluator per operand, each adjacent to
//!   that operand and `h_g`.
//! - target: an OR vertex adjacent only to the output signal.
//!
//! The schedule lists the input pairs, then for each gate in netlist order
//! its evaluators followed by its holder, then the target. During the first
//! period an evaluator reads its operands after they have settled and reads
//! its own holder before the holder's first update, so the holder survives
//! exactly when the gate is true. A holder whose only OR neighbor is the
//! (passive) target can never be switched back on, so later periods cannot
//! change the answer. Each evaluator updates after one OR neighbor and
//! before another, which places the schedule in the interleaved case.

use std::collections::BTreeMap;

use super::{AnchorRole, AnchorSet, Backend, GateKind, MonotoneCircuit, NetBuilder, ReductionOutput, Signal};
use crate::net::RuleKind;
use crate::schedule::UpdateSchedule;

pub fn compile_to_andor(circuit: &MonotoneCircuit) -> ReductionOutput {
    let mut b = NetBuilder::default();
    let mut order = Vec::new();
    let mut input_map = BTreeMap::new();
    let mut input_vertex = Vec::with_capacity(circuit.inputs().len());

    for name in circuit.inputs() {
        let p = b.vertex(RuleKind::Or);
        let q = b.vertex(RuleKind::Or);
        b.connect(p, q);
        order.extend([p, q]);
        input_map.insert(name.clone(), vec![p, q]);
        input_vertex.push(p);
    }

    let mut holders: Vec<usize> = Vec::with_capacity(circuit.gates().len());
    for (g, gate) in circuit.gates().iter().enumerate() {
        let signal = |s: Signal| match s {
            Signal::Input(i) => input_vertex[i],
            Signal::Gate(j) => holders[j],
        };
        let [a, c] = circuit.operands(g).map(signal);
        let holder = b.vertex(RuleKind::Or);
        let groups: Vec<Vec<usize>> = match gate.kind {
            _ if a == c => vec![vec![a]],
            GateKind::And2 => vec![vec![a, c]],
            GateKind::Or2 => vec![vec![a], vec![c]],
        };
        for operands in groups {
            let eval = b.vertex(RuleKind::And);
            for v in operands {
                b.connect(eval, v);
            }
            b.connect(eval, holder);
            order.push(eval);
        }
        order.push(holder);
        holders.push(holder);
    }

    let target = b.vertex(RuleKind::Or);
    let out = match circuit.output_signal() {
        Signal::Input(i) => input_vertex[i],
        Signal::Gate(g) => holders[g],
    };
    b.connect(target, out);
    order.push(target);

    let schedule = UpdateSchedule::sequential(&order).expect("every vertex listed once");
    ReductionOutput {
        backend: Backend::AndOr,
        network: b.finish(),
        schedule,
        target,
        input_map,
        anchors: vec![AnchorSet {
            role: AnchorRole::GateHolder,
            vertices: holders.clone(),
        }],
        gate_vertices: holders,
    }
}
