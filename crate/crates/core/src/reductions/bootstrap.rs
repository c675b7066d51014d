//! Circuit simulation by bootstrap percolation on a graph of maximum degree 5.
//!
//! Every circuit signal owns a core vertex and a broadcast tree:
//!
//! - input core: initially active iff the input is 1;
//! - `And2` core: two operand terminals, one anchor, two tree children
//!   (activates on 3 of 5, so both operands are needed);
//! - `Or2` core: two operand terminals, two anchors, one tree child
//!   (3 of 5 again, so either operand suffices);
//! - repeater: parent, up to two children and one anchor per child, so the
//!   parent alone tips the strict majority;
//! - terminal: two distinct tree leaves and a single consumer (a gate core
//!   or the target). It needs both leaves, so a consumer that turned on
//!   through some other operand cannot push activity back upstream.
//!
//! Anchors are initially active vertices (frozen by the rule); each serves at
//! most five clients. Pads fill the tree slots of unused gates; they sit in
//! 4-cliques with at most two outside clients each, so no pad ever has more
//! than two active neighbors out of at least four.

use std::collections::BTreeMap;

use super::{AnchorRole, AnchorSet, Backend, GateKind, MonotoneCircuit, NetBuilder, ReductionOutput, Signal};
use crate::net::RuleKind;
use crate::schedule::UpdateSchedule;

pub const MAX_BOOTSTRAP_DEGREE: usize = 5;

const ANCHOR_CLIENTS: usize = 5;
const PAD_CLIENTS: usize = 2;

#[derive(Default)]
struct Gadgets {
    net: NetBuilder,
    anchors: Vec<usize>,
    /// Clients of the newest anchor.
    anchor_clients: Vec<usize>,
    pads: Vec<usize>,
    pad_clients: Vec<Vec<usize>>,
}

impl Gadgets {
    fn vertex(&mut self) -> usize {
        self.net.vertex(RuleKind::Bootstrap)
    }

    /// Attaches one more anchor to `client`. A client never gets the same
    /// anchor twice, since parallel edges would collapse.
    fn anchor(&mut self, client: usize) {
        if self.anchors.is_empty()
            || self.anchor_clients.len() == ANCHOR_CLIENTS
            || self.anchor_clients.contains(&client)
        {
            let a = self.vertex();
            self.anchors.push(a);
            self.anchor_clients.clear();
        }
        self.anchor_clients.push(client);
        let a = *self.anchors.last().unwrap();
        self.net.connect(client, a);
    }

    fn pad(&mut self, client: usize) {
        let slot = match self
            .pad_clients
            .iter()
            .position(|c| c.len() < PAD_CLIENTS && !c.contains(&client))
        {
            Some(i) => i,
            None => {
                let group: Vec<usize> = (0..4).map(|_| self.vertex()).collect();
                for (i, &u) in group.iter().enumerate() {
                    for &v in &group[i + 1..] {
                        self.net.connect(u, v);
                    }
                }
                self.pads.extend(&group);
                self.pad_clients.extend(std::iter::repeat_with(Vec::new).take(4));
                self.pad_clients.len() - 4
            }
        };
        self.pad_clients[slot].push(client);
        let p = self.pads[slot];
        self.net.connect(client, p);
    }

    /// Repeater subtree under `parent` with `leaves` leaves; leaves are
    /// appended to `out`.
    fn subtree(&mut self, parent: usize, leaves: usize, out: &mut Vec<usize>) {
        let r = self.vertex();
        self.net.connect(parent, r);
        if leaves == 1 {
            out.push(r);
            return;
        }
        self.subtree(r, leaves.div_ceil(2), out);
        self.subtree(r, leaves / 2, out);
        self.anchor(r);
        self.anchor(r);
    }

    /// Hangs `roots` subtrees off `core` and returns `fanout` terminals.
    /// With zero fan-out the would-be child slots are padded instead.
    fn broadcast(&mut self, core: usize, roots: usize, fanout: usize) -> Vec<usize> {
        if fanout == 0 {
            for _ in 0..roots {
                self.pad(core);
            }
            return Vec::new();
        }
        let m = fanout.max(2);
        let mut leaves = Vec::with_capacity(m);
        if roots == 1 {
            self.subtree(core, m, &mut leaves);
        } else {
            self.subtree(core, m.div_ceil(2), &mut leaves);
            self.subtree(core, m / 2, &mut leaves);
        }
        let mut children = vec![0usize; m];
        let terminals = (0..fanout)
            .map(|j| {
                let t = self.vertex();
                for leaf in [j, (j + 1) % m] {
                    self.net.connect(t, leaves[leaf]);
                    children[leaf] += 1;
                }
                t
            })
            .collect();
        for (&leaf, &c) in leaves.iter().zip(&children) {
            for _ in 0..c {
                self.anchor(leaf);
            }
        }
        terminals
    }
}

pub fn compile_to_bootstrap(circuit: &MonotoneCircuit) -> ReductionOutput {
    let (input_fanout, gate_fanout) = circuit.fanout();
    let mut gx = Gadgets::default();
    let mut input_map = BTreeMap::new();
    let mut input_terminals = Vec::new();
    for (name, &k) in circuit.inputs().iter().zip(&input_fanout) {
        let core = gx.vertex();
        input_map.insert(name.clone(), vec![core]);
        input_terminals.push(gx.broadcast(core, 1, k));
    }

    let mut gate_terminals: Vec<Vec<usize>> = Vec::new();
    let mut cores = Vec::new();
    for (g, gate) in circuit.gates().iter().enumerate() {
        let core = gx.vertex();
        for s in circuit.operands(g) {
            let terminal = match s {
                Signal::Input(i) => input_terminals[i].pop(),
                Signal::Gate(j) => gate_terminals[j].pop(),
            }
            .expect("fan-out counts every operand slot");
            gx.net.connect(core, terminal);
        }
        let roots = match gate.kind {
            GateKind::And2 => {
                gx.anchor(core);
                2
            }
            GateKind::Or2 => {
                gx.anchor(core);
                gx.anchor(core);
                1
            }
        };
        gate_terminals.push(gx.broadcast(core, roots, gate_fanout[g]));
        cores.push(core);
    }

    let target = gx.vertex();
    let terminal = match circuit.output_signal() {
        Signal::Input(i) => input_terminals[i].pop(),
        Signal::Gate(g) => gate_terminals[g].pop(),
    }
    .expect("output has a terminal");
    gx.net.connect(target, terminal);

    let Gadgets { net, anchors, pads, .. } = gx;
    let network = net.finish();
    let schedule = UpdateSchedule::parallel(network.n()).expect("nonempty network");
    ReductionOutput {
        backend: Backend::Bootstrap,
        network,
        schedule,
        target,
        input_map,
        anchors: vec![
            AnchorSet {
                role: AnchorRole::AlwaysActive,
                vertices: anchors,
            },
            AnchorSet {
                role: AnchorRole::NeverActive,
                vertices: pads,
            },
        ],
        gate_vertices: cores,
    }
}
