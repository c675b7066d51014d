//! Monotone circuits compiled into reachability instances.
//!
//! Each compiler turns a circuit into a network, a schedule, a target vertex
//! and a map from circuit inputs to the vertices they switch on. For every
//! input assignment the target is reachable exactly when the circuit
//! evaluates to 1; [`verify_reduction`] checks that claim exhaustively.

mod andor;
mod bootstrap;
mod circuit;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{DynamicsError, PerInstance};
use crate::net::{Configuration, Graph, NetworkSpec, RuleKind};
use crate::schedule::UpdateSchedule;

pub use andor::compile_to_andor;
pub use bootstrap::{compile_to_bootstrap, MAX_BOOTSTRAP_DEGREE};
pub use circuit::{CircuitError, Gate, GateKind, MonotoneCircuit, Signal};
pub use verify::{verify_reduction, Mismatch, VerificationError, VerificationReport, DEFAULT_EXHAUSTION_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// AND/OR network under a sequential schedule.
    AndOr,
    /// Uniform bootstrap network of maximum degree 5 under the parallel
    /// schedule.
    Bootstrap,
}

impl Backend {
    pub fn compile(self, circuit: &MonotoneCircuit) -> ReductionOutput {
        match self {
            Backend::AndOr => compile_to_andor(circuit),
            Backend::Bootstrap => compile_to_bootstrap(circuit),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::AndOr => "andor",
            Backend::Bootstrap => "bootstrap",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "andor" => Ok(Backend::AndOr),
            "bootstrap" => Ok(Backend::Bootstrap),
            other => Err(format!("unknown backend {other:?} (expected andor or bootstrap)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnchorRole {
    /// Initially active bootstrap vertices; frozen active.
    AlwaysActive,
    /// Bootstrap vertices that can never gather a strict majority.
    NeverActive,
    /// Initially active OR vertices that survive their first update exactly
    /// when their gate evaluates to 1.
    GateHolder,
}

impl AnchorRole {
    pub fn initially_active(self) -> bool {
        matches!(self, AnchorRole::AlwaysActive | AnchorRole::GateHolder)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorSet {
    pub role: AnchorRole,
    pub vertices: Vec<usize>,
}

/// A compiled instance template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub backend: Backend,
    pub network: NetworkSpec,
    pub schedule: UpdateSchedule,
    pub target: usize,
    /// Vertices switched on when the named input is 1.
    pub input_map: BTreeMap<String, Vec<usize>>,
    pub anchors: Vec<AnchorSet>,
    /// Vertex realizing each gate's value (the gate holder or the gate core).
    pub gate_vertices: Vec<usize>,
}

impl ReductionOutput {
    pub fn anchor_vertices(&self, role: AnchorRole) -> impl Iterator<Item = usize> + '_ {
        self.anchors
            .iter()
            .filter(move |a| a.role == role)
            .flat_map(|a| a.vertices.iter().copied())
    }

    /// Initial configuration for input values in circuit declaration order.
    pub fn initial_config(&self, circuit: &MonotoneCircuit, assignment: &[bool]) -> Configuration {
        let mut config = Configuration::zeros(self.network.n());
        for set in self.anchors.iter().filter(|a| a.role.initially_active()) {
            for &v in &set.vertices {
                config.set(v, true);
            }
        }
        for (name, &on) in circuit.inputs().iter().zip(assignment) {
            if on {
                for &v in &self.input_map[name] {
                    config.set(v, true);
                }
            }
        }
        config
    }

    pub fn instantiate(&self, circuit: &MonotoneCircuit, assignment: &[bool]) -> Result<PerInstance, DynamicsError> {
        PerInstance::new(
            self.network.clone(),
            self.schedule.clone(),
            self.initial_config(circuit, assignment),
            self.target,
            self.network.is_and_or(),
        )
    }
}

/// Incremental graph construction shared by the compilers.
#[derive(Debug, Default)]
struct NetBuilder {
    rules: Vec<RuleKind>,
    edges: Vec<(usize, usize)>,
}

impl NetBuilder {
    fn vertex(&mut self, rule: RuleKind) -> usize {
        self.rules.push(rule);
        self.rules.len() - 1
    }

    fn connect(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.edges.push((u, v));
    }

    fn finish(self) -> NetworkSpec {
        let graph = Graph::new(self.rules.len(), &self.edges).expect("builder only emits valid edges");
        // Gadget degree arithmetic breaks if an edge was emitted twice.
        assert_eq!(graph.edge_count(), self.edges.len(), "duplicate gadget edge");
        NetworkSpec::new(graph, self.rules).expect("one rule per vertex")
    }
}
