//! Seeded random instances: graphs, rule mixes, schedules, configurations
//! and monotone circuits.
//!
//! Everything draws from a caller-supplied RNG so sweeps are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::net::{Configuration, Graph, NetworkSpec, RuleKind};
use crate::reductions::{Gate, GateKind, MonotoneCircuit};
use crate::schedule::UpdateSchedule;

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are in range and loop-free")
}

pub fn random_config<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Configuration {
    Configuration::from_active(n, (0..n).filter(|_| rng.gen_bool(density)))
}

/// Random AND/OR assignment over `graph`.
pub fn random_and_or<R: Rng + ?Sized>(rng: &mut R, graph: Graph) -> NetworkSpec {
    let rules = (0..graph.n())
        .map(|_| if rng.gen_bool(0.5) { RuleKind::And } else { RuleKind::Or })
        .collect();
    NetworkSpec::new(graph, rules).expect("one rule per vertex")
}

/// Random permutation of `0..n`.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

pub fn random_sequential<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UpdateSchedule {
    UpdateSchedule::sequential(&random_order(rng, n)).expect("a permutation")
}

/// Random ordered partition of `0..n` into between 1 and `n` blocks.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UpdateSchedule {
    let order = random_order(rng, n);
    let blocks = rng.gen_range(1..=n);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, blocks - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(blocks);
    let mut start = 0;
    for cut in cuts.into_iter().chain(std::iter::once(n)) {
        out.push(order[start..cut].to_vec());
        start = cut;
    }
    UpdateSchedule::new(n, out).expect("a covering partition")
}

/// A random partition followed by up to `extra` further random blocks, so
/// vertices may update several times per period.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> UpdateSchedule {
    let base = random_partition(rng, n);
    let mut blocks = base.blocks().to_vec();
    for _ in 0..rng.gen_range(0..=extra) {
        let size = rng.gen_range(1..=n);
        let mut block = rand::seq::index::sample(rng, n, size).into_vec();
        block.sort_unstable();
        let at = rng.gen_range(0..=blocks.len());
        blocks.insert(at, block);
    }
    UpdateSchedule::new(n, blocks).expect("still covering")
}

/// Random monotone circuit. Gate operands are drawn from all earlier signals
/// and the output is the last gate.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, inputs: usize, gates: usize) -> MonotoneCircuit {
    assert!(inputs >= 1);
    let mut names: Vec<String> = (0..inputs).map(|i| format!("x{i}")).collect();
    let input_names = names.clone();
    let mut list = Vec::with_capacity(gates);
    for g in 0..gates {
        let kind = if rng.gen_bool(0.5) {
            GateKind::And2
        } else {
            GateKind::Or2
        };
        let a = names[rng.gen_range(0..names.len())].clone();
        let b = names[rng.gen_range(0..names.len())].clone();
        let name = format!("g{g}");
        list.push(Gate::new(name.clone(), kind, a, b));
        names.push(name);
    }
    let output = names.last().unwrap().clone();
    MonotoneCircuit::new(input_names, list, output).expect("operands reference earlier signals")
}

/// Every circuit with exactly `gates` gates over `inputs` inputs whose
/// output is the last gate (or, without gates, each input). Operand pairs
/// are unordered and may repeat a signal.
pub fn all_circuits(inputs: usize, gates: usize) -> Vec<MonotoneCircuit> {
    let input_names: Vec<String> = (0..inputs).map(|i| format!("x{i}")).collect();
    if gates == 0 {
        return input_names
            .iter()
            .map(|out| MonotoneCircuit::new(input_names.clone(), vec![], out.clone()).unwrap())
            .collect();
    }
    let mut partial: Vec<Vec<Gate>> = vec![Vec::new()];
    for g in 0..gates {
        let mut signals = input_names.clone();
        signals.extend((0..g).map(|j| format!("g{j}")));
        let mut next = Vec::new();
        for prefix in &partial {
            for kind in [GateKind::And2, GateKind::Or2] {
                for i in 0..signals.len() {
                    for j in i..signals.len() {
                        let mut gates = prefix.clone();
                        gates.push(Gate::new(format!("g{g}"), kind, signals[i].clone(), signals[j].clone()));
                        next.push(gates);
                    }
                }
            }
        }
        partial = next;
    }
    let output = format!("g{}", gates - 1);
    partial
        .into_iter()
        .map(|g| MonotoneCircuit::new(input_names.clone(), g, output.clone()).unwrap())
        .collect()
}
