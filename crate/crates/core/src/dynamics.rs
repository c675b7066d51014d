//! Evolution of configurations under a periodic schedule.
//!
//! One period applies the schedule's blocks in order; inside a block every
//! vertex reads the configuration as it was before the block. Because a
//! period is a deterministic map on boundary configurations, orbits and the
//! reachability question are settled as soon as a boundary configuration
//! repeats.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net::{eval_unchecked, validate_initial_config, Configuration, Graph, NetError, NetworkSpec, RuleKind};
use crate::schedule::UpdateSchedule;

/// Hard ceiling on the default period bound.
pub const DEFAULT_MAX_PERIODS_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("configuration has length {got}, network has {expected} vertices")]
    ConfigLength { got: usize, expected: usize },
    #[error("schedule is for {schedule} vertices, network has {network}")]
    ScheduleSize { schedule: usize, network: usize },
    #[error("target vertex {0} is initially active")]
    TargetInitiallyActive(usize),
    #[error(transparent)]
    InitialConfig(#[from] NetError),
    #[error("no repeated configuration within {max_periods} periods")]
    BoundExceeded {
        max_periods: usize,
        /// Boundary configurations visited before giving up, `x(0)` first.
        partial: Vec<Configuration>,
    },
    #[error("max_periods must be at least 1")]
    ZeroBound,
}

/// `min(2^n, 10^6)`: enough periods to force a repeat for small networks.
pub fn default_max_periods(n: usize) -> usize {
    if n >= 20 {
        DEFAULT_MAX_PERIODS_CAP
    } else {
        (1usize << n).min(DEFAULT_MAX_PERIODS_CAP)
    }
}

fn check_config(network: &NetworkSpec, config: &Configuration) -> Result<(), DynamicsError> {
    if config.len() != network.n() {
        return Err(DynamicsError::ConfigLength {
            got: config.len(),
            expected: network.n(),
        });
    }
    Ok(())
}

fn check_schedule(network: &NetworkSpec, schedule: &UpdateSchedule) -> Result<(), DynamicsError> {
    if schedule.n() != network.n() {
        return Err(DynamicsError::ScheduleSize {
            schedule: schedule.n(),
            network: network.n(),
        });
    }
    Ok(())
}

/// Updates `block` in place. All reads see the configuration from before the
/// block; `scratch` is reused across calls.
fn update_block_in_place(network: &NetworkSpec, config: &mut Configuration, block: &[usize], scratch: &mut Vec<bool>) {
    let graph = network.graph();
    scratch.clear();
    scratch.extend(block.iter().map(|&v| {
        let nb = graph.neighbors(v);
        eval_unchecked(network.rule(v), config.get(v), config.count_among(nb), nb.len())
    }));
    for (&v, &value) in block.iter().zip(scratch.iter()) {
        config.set(v, value);
    }
}

/// Synchronously updates the vertices of `block`, leaving the others alone.
pub fn apply_block(
    network: &NetworkSpec,
    config: &Configuration,
    block: &[usize],
) -> Result<Configuration, DynamicsError> {
    check_config(network, config)?;
    if block.is_empty() {
        return Err(DynamicsError::EmptyBlock);
    }
    if let Some(&v) = block.iter().find(|&&v| v >= network.n()) {
        return Err(DynamicsError::VertexOutOfRange {
            vertex: v,
            n: network.n(),
        });
    }
    let mut next = config.clone();
    update_block_in_place(network, &mut next, block, &mut Vec::with_capacity(block.len()));
    Ok(next)
}

/// A 0 to 1 transition observed during a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Activation {
    pub vertex: usize,
    pub block: usize,
}

fn period_in_place(
    network: &NetworkSpec,
    schedule: &UpdateSchedule,
    config: &mut Configuration,
    scratch: &mut Vec<bool>,
    log: &mut Vec<Activation>,
) {
    for (b, block) in schedule.blocks().iter().enumerate() {
        let before: Vec<bool> = block.iter().map(|&v| config.get(v)).collect();
        update_block_in_place(network, config, block, scratch);
        for (&v, was) in block.iter().zip(before) {
            if !was && config.get(v) {
                log.push(Activation { vertex: v, block: b });
            }
        }
    }
}

/// Applies every block of the schedule once, logging each activation.
pub fn run_period(
    network: &NetworkSpec,
    schedule: &UpdateSchedule,
    config: &Configuration,
) -> Result<(Configuration, Vec<Activation>), DynamicsError> {
    check_config(network, config)?;
    check_schedule(network, schedule)?;
    let mut next = config.clone();
    let mut log = Vec::new();
    period_in_place(network, schedule, &mut next, &mut Vec::new(), &mut log);
    Ok((next, log))
}

/// Boundary configurations up to and including the first repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// `x(0), …, x(transient + period)`, where the last entry equals
    /// `x(transient)`.
    pub boundary_states: Vec<Configuration>,
    pub transient: usize,
    pub period: usize,
}

impl Trajectory {
    /// Every boundary configuration in the eventual cycle.
    pub fn cycle(&self) -> &[Configuration] {
        &self.boundary_states[self.transient..self.transient + self.period]
    }
}

/// Iterates the period map from `initial` until a boundary configuration
/// repeats, running at most `max_periods` periods.
pub fn orbit(
    network: &NetworkSpec,
    schedule: &UpdateSchedule,
    initial: &Configuration,
    max_periods: usize,
) -> Result<Trajectory, DynamicsError> {
    if max_periods == 0 {
        return Err(DynamicsError::ZeroBound);
    }
    check_config(network, initial)?;
    check_schedule(network, schedule)?;
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut states = vec![initial.clone()];
    seen.insert(initial.clone(), 0);
    let mut current = initial.clone();
    let mut scratch = Vec::new();
    let mut log = Vec::new();
    for t in 1..=max_periods {
        period_in_place(network, schedule, &mut current, &mut scratch, &mut log);
        log.clear();
        states.push(current.clone());
        if let Some(&first) = seen.get(&current) {
            return Ok(Trajectory {
                boundary_states: states,
                transient: first,
                period: t - first,
            });
        }
        seen.insert(current.clone(), t);
    }
    Err(DynamicsError::BoundExceeded {
        max_periods,
        partial: states,
    })
}

/// Granularity at which the target is checked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observation {
    /// After every block.
    #[default]
    Block,
    /// Only at the end of each period.
    Period,
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observation::Block => "block",
            Observation::Period => "period",
        })
    }
}

/// A reachability question: does `target` ever become active?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerInstance {
    network: NetworkSpec,
    schedule: UpdateSchedule,
    initial: Configuration,
    target: usize,
}

impl PerInstance {
    pub fn new(
        network: NetworkSpec,
        schedule: UpdateSchedule,
        initial: Configuration,
        target: usize,
        enforce_or_only: bool,
    ) -> Result<Self, DynamicsError> {
        check_schedule(&network, &schedule)?;
        validate_initial_config(&network, &initial, enforce_or_only)?;
        if target >= network.n() {
            return Err(DynamicsError::VertexOutOfRange {
                vertex: target,
                n: network.n(),
            });
        }
        if initial.get(target) {
            return Err(DynamicsError::TargetInitiallyActive(target));
        }
        Ok(PerInstance {
            network,
            schedule,
            initial,
            target,
        })
    }

    pub fn network(&self) -> &NetworkSpec {
        &self.network
    }

    pub fn schedule(&self) -> &UpdateSchedule {
        &self.schedule
    }

    pub fn initial(&self) -> &Configuration {
        &self.initial
    }

    pub fn target(&self) -> usize {
        self.target
    }
}

/// Block boundary at which the target first holds state 1. `period` counts
/// from 0, so the boundary lies at time `period + 1` in period units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessTime {
    pub period: usize,
    pub block: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerAnswer {
    pub reachable: bool,
    pub witness_time: Option<WitnessTime>,
}

impl PerAnswer {
    fn unreachable() -> Self {
        PerAnswer {
            reachable: false,
            witness_time: None,
        }
    }

    fn at(period: usize, block: usize) -> Self {
        PerAnswer {
            reachable: true,
            witness_time: Some(WitnessTime { period, block }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerOptions {
    /// Defaults to [`default_max_periods`] of the network size.
    pub max_periods: Option<usize>,
    pub observe: Observation,
    /// Use incremental neighbor counts on uniform bootstrap networks. Such
    /// runs always stop within `n + 1` periods and ignore `max_periods`.
    pub bootstrap_fast_path: bool,
}

impl Default for PerOptions {
    fn default() -> Self {
        PerOptions {
            max_periods: None,
            observe: Observation::Block,
            bootstrap_fast_path: true,
        }
    }
}

/// Decides whether the target of `instance` is ever active.
pub fn decide_per(instance: &PerInstance, options: &PerOptions) -> Result<PerAnswer, DynamicsError> {
    let network = &instance.network;
    if options.bootstrap_fast_path && network.is_uniform(RuleKind::Bootstrap) {
        return Ok(decide_bootstrap(instance, options.observe));
    }
    let max_periods = options.max_periods.unwrap_or_else(|| default_max_periods(network.n()));
    if max_periods == 0 {
        return Err(DynamicsError::ZeroBound);
    }
    let schedule = &instance.schedule;
    let last_block = schedule.blocks().len() - 1;
    let target = instance.target;
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut history = Vec::new();
    let mut current = instance.initial.clone();
    let mut scratch = Vec::new();
    for period in 0..max_periods {
        if seen.insert(current.clone(), period).is_some() {
            return Ok(PerAnswer::unreachable());
        }
        history.push(current.clone());
        for (b, block) in schedule.blocks().iter().enumerate() {
            update_block_in_place(network, &mut current, block, &mut scratch);
            let observed = options.observe == Observation::Block || b == last_block;
            if observed && current.get(target) {
                return Ok(PerAnswer::at(period, b));
            }
        }
    }
    if seen.contains_key(&current) {
        return Ok(PerAnswer::unreachable());
    }
    history.push(current);
    Err(DynamicsError::BoundExceeded {
        max_periods,
        partial: history,
    })
}

/// Bootstrap state with per-vertex active-neighbor counts kept up to date.
#[derive(Debug, Clone)]
pub struct BootstrapState<'g> {
    graph: &'g Graph,
    config: Configuration,
    counts: Vec<usize>,
}

impl<'g> BootstrapState<'g> {
    pub fn new(graph: &'g Graph, config: Configuration) -> Self {
        let counts = (0..graph.n()).map(|v| config.count_among(graph.neighbors(v))).collect();
        BootstrapState { graph, config, counts }
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    fn activate(&mut self, v: usize) {
        self.config.set(v, true);
        for &u in self.graph.neighbors(v) {
            self.counts[u] += 1;
        }
    }

    /// Synchronous bootstrap update of `block`; returns newly active vertices.
    pub fn step_block(&mut self, block: &[usize]) -> Vec<usize> {
        let fresh: Vec<usize> = block
            .iter()
            .copied()
            .filter(|&v| !self.config.get(v) && 2 * self.counts[v] > self.graph.degree(v))
            .collect();
        for &v in &fresh {
            self.activate(v);
        }
        fresh
    }
}

fn decide_bootstrap(instance: &PerInstance, observe: Observation) -> PerAnswer {
    let schedule = &instance.schedule;
    let last_block = schedule.blocks().len() - 1;
    let mut state = BootstrapState::new(instance.network.graph(), instance.initial.clone());
    // Every period without an activation is a fixed point, and there can be at
    // most n periods with one.
    for period in 0.. {
        let mut changed = false;
        for (b, block) in schedule.blocks().iter().enumerate() {
            let fresh = state.step_block(block);
            changed |= !fresh.is_empty();
            if fresh.contains(&instance.target) {
                let b = if observe == Observation::Block { b } else { last_block };
                return PerAnswer::at(period, b);
            }
        }
        if !changed {
            break;
        }
    }
    PerAnswer::unreachable()
}

/// Least superset of `initial` in which no inactive vertex has a strict
/// majority of active neighbors. Worklist over activations, linear in the
/// size of the graph.
pub fn bootstrap_closure(graph: &Graph, initial: &Configuration) -> Configuration {
    assert_eq!(initial.len(), graph.n(), "initial set sized for a different graph");
    let mut active = initial.clone();
    let mut counts = vec![0usize; graph.n()];
    let mut work: Vec<usize> = initial.ones().collect();
    while let Some(v) = work.pop() {
        for &u in graph.neighbors(v) {
            counts[u] += 1;
            if !active.get(u) && 2 * counts[u] > graph.degree(u) {
                active.set(u, true);
                work.push(u);
            }
        }
    }
    active
}
