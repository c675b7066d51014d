//! Periodic update schedules and their classification on AND/OR networks.
//!
//! A schedule is a word of vertex blocks applied cyclically. Vertices in the
//! same block update synchronously; blocks run one after another. The word
//! length counts vertex occurrences, so the one-block synchronous schedule
//! and every sequential order both have length `n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net::{NetworkSpec, RuleKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule needs at least one vertex")]
    EmptyVertexSet,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} appears twice in block {block}")]
    DuplicateInBlock { vertex: usize, block: usize },
    #[error("vertex {0} is not covered by any block")]
    Uncovered(usize),
    #[error("sequential order repeats vertex {0}")]
    NotAPermutation(usize),
    #[error("word length {length} differs from n = {n}; block positions are undefined")]
    LengthNotN { length: usize, n: usize },
    #[error("vertex {vertex} has rule {rule}; classification needs an AND/OR network")]
    NotAndOr { vertex: usize, rule: RuleKind },
    #[error("schedule is for {schedule} vertices, network has {network}")]
    SizeMismatch { schedule: usize, network: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpdateSchedule {
    n: usize,
    blocks: Vec<Vec<usize>>,
    length: usize,
    /// Block index of each vertex, present only when every vertex occurs once.
    position: Option<Vec<usize>>,
}

impl UpdateSchedule {
    /// Validates a block list: blocks nonempty and duplicate-free, every
    /// vertex in `0..n` covered.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, ScheduleError> {
        if n == 0 {
            return Err(ScheduleError::EmptyVertexSet);
        }
        let mut occurrences = vec![0usize; n];
        let mut last_block = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ScheduleError::EmptyBlock(b));
            }
            for &v in block {
                if v >= n {
                    return Err(ScheduleError::VertexOutOfRange { vertex: v, n });
                }
                if last_block[v] == b {
                    return Err(ScheduleError::DuplicateInBlock { vertex: v, block: b });
                }
                last_block[v] = b;
                occurrences[v] += 1;
            }
        }
        if let Some(v) = occurrences.iter().position(|&c| c == 0) {
            return Err(ScheduleError::Uncovered(v));
        }
        let length = occurrences.iter().sum();
        let position = (length == n).then_some(last_block);
        Ok(UpdateSchedule {
            n,
            blocks,
            length,
            position,
        })
    }

    /// One block holding every vertex.
    pub fn parallel(n: usize) -> Result<Self, ScheduleError> {
        Self::new(n, vec![(0..n).collect()])
    }

    /// Singleton blocks in the given order.
    pub fn sequential(order: &[usize]) -> Result<Self, ScheduleError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in order {
            if v >= n {
                return Err(ScheduleError::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ScheduleError::NotAPermutation(v));
            }
        }
        Self::new(n, order.iter().map(|&v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Total number of vertex occurrences in one period.
    pub fn word_length(&self) -> usize {
        self.length
    }

    pub fn is_parallel(&self) -> bool {
        self.blocks.len() == 1 && self.length == self.n
    }

    /// Block index updating `v`; defined only when the word length is `n`.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.position.as_ref().map(|p| p[v])
    }

    pub fn positions(&self) -> Option<&[usize]> {
        self.position.as_deref()
    }
}

impl fmt::Display for UpdateSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Where an AND/OR network with a given schedule falls in the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScheduleCase {
    /// The word is longer than `n`.
    LongWord,
    /// Length `n`, and every AND vertex updates no later than all of its OR
    /// neighbors or no earlier than all of them.
    NcCondition,
    /// Length `n`, and some AND vertex updates strictly between two OR
    /// neighbors.
    Interleaved,
}

impl fmt::Display for ScheduleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleCase::LongWord => "LongWord",
            ScheduleCase::NcCondition => "NcCondition",
            ScheduleCase::Interleaved => "Interleaved",
        })
    }
}

fn require_and_or(network: &NetworkSpec, schedule: &UpdateSchedule) -> Result<(), ScheduleError> {
    if schedule.n() != network.n() {
        return Err(ScheduleError::SizeMismatch {
            schedule: schedule.n(),
            network: network.n(),
        });
    }
    match network
        .rules()
        .iter()
        .position(|r| !matches!(r, RuleKind::And | RuleKind::Or))
    {
        Some(v) => Err(ScheduleError::NotAndOr {
            vertex: v,
            rule: network.rule(v),
        }),
        None => Ok(()),
    }
}

fn positions_for<'a>(network: &NetworkSpec, schedule: &'a UpdateSchedule) -> Result<&'a [usize], ScheduleError> {
    require_and_or(network, schedule)?;
    schedule.positions().ok_or(ScheduleError::LengthNotN {
        length: schedule.word_length(),
        n: schedule.n(),
    })
}

/// AND vertices that update strictly after one OR neighbor and strictly
/// before another, each paired with every OR neighbor in a different block.
pub fn nc_violations(network: &NetworkSpec, schedule: &UpdateSchedule) -> Result<Vec<(usize, usize)>, ScheduleError> {
    let pos = positions_for(network, schedule)?;
    let mut out = Vec::new();
    for &v in network.and_set() {
        let or_neighbors = network
            .graph()
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| network.rule(u) == RuleKind::Or);
        let (mut before, mut after) = (false, false);
        for u in or_neighbors.clone() {
            before |= pos[u] < pos[v];
            after |= pos[u] > pos[v];
        }
        if before && after {
            out.extend(or_neighbors.filter(|&u| pos[u] != pos[v]).map(|u| (v, u)));
        }
    }
    Ok(out)
}

/// True when every AND vertex updates no later than all its OR neighbors or
/// no earlier than all of them. Same-block pairs satisfy both directions.
pub fn check_nc_condition(network: &NetworkSpec, schedule: &UpdateSchedule) -> Result<bool, ScheduleError> {
    let pos = positions_for(network, schedule)?;
    let graph = network.graph();
    Ok(network.and_set().iter().all(|&v| {
        let mut or_positions = graph
            .neighbors(v)
            .iter()
            .filter(|&&u| network.rule(u) == RuleKind::Or)
            .map(|&u| pos[u]);
        let (lo, hi) = or_positions
            .by_ref()
            .fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
        lo == usize::MAX || pos[v] <= lo || pos[v] >= hi
    }))
}

pub fn classify_schedule(network: &NetworkSpec, schedule: &UpdateSchedule) -> Result<ScheduleCase, ScheduleError> {
    require_and_or(network, schedule)?;
    if schedule.word_length() > network.n() {
        return Ok(ScheduleCase::LongWord);
    }
    Ok(if check_nc_condition(network, schedule)? {
        ScheduleCase::NcCondition
    } else {
        ScheduleCase::Interleaved
    })
}
