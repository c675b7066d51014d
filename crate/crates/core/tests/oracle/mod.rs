//! Brute-force reference implementations used as test oracles.
//!
//! Everything here works on plain adjacency matrices and `Vec<bool>` states
//! and shares no simulation code with the library.
#![allow(dead_code)]

use automata_net::{NetworkSpec, RuleKind, UpdateSchedule};

/// The local rules written out case by case.
pub fn rule(kind: RuleKind, me: bool, active: usize, degree: usize) -> bool {
    let half = degree as f64 / 2.0;
    let a = active as f64;
    match kind {
        RuleKind::Bootstrap => {
            if me {
                true
            } else {
                a > half
            }
        }
        RuleKind::SimpleMajority => {
            if a > half {
                true
            } else if a < half {
                false
            } else {
                me
            }
        }
        RuleKind::And => (0..degree).all(|i| i < active),
        RuleKind::Or => (0..degree).any(|i| i < active),
    }
}

#[derive(Debug, Clone)]
pub struct Net {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
    pub rules: Vec<RuleKind>,
    pub blocks: Vec<Vec<usize>>,
}

impl Net {
    pub fn from_spec(spec: &NetworkSpec, schedule: &UpdateSchedule) -> Self {
        let n = spec.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in spec.graph().edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Net {
            n,
            adj,
            rules: spec.rules().to_vec(),
            blocks: schedule.blocks().to_vec(),
        }
    }

    fn next_value(&self, x: &[bool], v: usize) -> bool {
        let degree = self.adj[v].iter().filter(|&&e| e).count();
        let active = (0..self.n).filter(|&u| self.adj[v][u] && x[u]).count();
        rule(self.rules[v], x[v], active, degree)
    }

    /// Every vertex of the block reads the state from before the block.
    pub fn block(&self, x: &[bool], b: usize) -> Vec<bool> {
        let mut y = x.to_vec();
        for &v in &self.blocks[b] {
            y[v] = self.next_value(x, v);
        }
        y
    }

    pub fn period(&self, x: &[bool]) -> Vec<bool> {
        (0..self.blocks.len()).fold(x.to_vec(), |y, b| self.block(&y, b))
    }

    /// First `(period, block)` after which `target` is active, checking after
    /// every block or only after the last one. Stops when a period-start
    /// state is seen again.
    pub fn per(&self, init: &[bool], target: usize, every_block: bool) -> Option<(usize, usize)> {
        let mut visited: Vec<Vec<bool>> = Vec::new();
        let mut x = init.to_vec();
        let last = self.blocks.len() - 1;
        for t in 0.. {
            if visited.contains(&x) {
                return None;
            }
            visited.push(x.clone());
            for b in 0..self.blocks.len() {
                x = self.block(&x, b);
                if (every_block || b == last) && x[target] {
                    return Some((t, b));
                }
            }
        }
        unreachable!()
    }

    /// Smallest `(tau, p)` with `x(tau + p) == x(tau)`.
    pub fn tau_p(&self, init: &[bool]) -> (usize, usize) {
        let mut states = vec![init.to_vec()];
        loop {
            let next = self.period(states.last().unwrap());
            if let Some(i) = states.iter().position(|s| *s == next) {
                return (i, states.len() - i);
            }
            states.push(next);
        }
    }

    /// Runs until the state stops changing between periods.
    pub fn limit(&self, init: &[bool]) -> Vec<bool> {
        let mut x = init.to_vec();
        loop {
            let y = self.period(&x);
            if y == x {
                return x;
            }
            x = y;
        }
    }

    /// "Every AND vertex is updated after or before all its OR neighbors",
    /// expanded over explicit block positions. Only meaningful when every
    /// vertex occurs once in the schedule.
    pub fn nc_condition(&self) -> bool {
        let pos = |v: usize| self.blocks.iter().position(|b| b.contains(&v)).unwrap();
        (0..self.n).filter(|&v| self.rules[v] == RuleKind::And).all(|v| {
            let ors: Vec<usize> = (0..self.n)
                .filter(|&u| self.adj[v][u] && self.rules[u] == RuleKind::Or)
                .collect();
            let after_all = ors.iter().all(|&u| pos(v) >= pos(u));
            let before_all = ors.iter().all(|&u| pos(v) <= pos(u));
            after_all || before_all
        })
    }
}

/// Bootstrap closure by repeated synchronous sweeps over all vertices.
pub fn closure(spec: &NetworkSpec, init: &[bool]) -> Vec<bool> {
    let n = spec.n();
    let uniform = NetworkSpec::uniform(spec.graph().clone(), RuleKind::Bootstrap);
    let sched = UpdateSchedule::parallel(n).unwrap();
    Net::from_spec(&uniform, &sched).limit(init)
}

/// Evaluates a netlist given as `(is_and, a, b)` over signal indices, where
/// signals `0..inputs` are inputs and gate `g` is signal `inputs + g`.
pub fn eval_netlist(inputs: &[bool], gates: &[(bool, usize, usize)], output: usize) -> bool {
    let mut v = inputs.to_vec();
    for &(is_and, a, b) in gates {
        v.push(if is_and { v[a] && v[b] } else { v[a] || v[b] });
    }
    v[output]
}
