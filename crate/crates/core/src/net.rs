//! Graphs, local rules, networks and configurations.
//!
//! An automata network is a simple undirected graph on dense vertex ids
//! `0..n`, one [`RuleKind`] per vertex and binary states. Every other module
//! works on the types defined here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{active} active neighbors exceeds degree {degree}")]
    CountExceedsDegree { active: usize, degree: usize },
    #[error("rule assignment has length {got}, expected {expected}")]
    RuleLengthMismatch { got: usize, expected: usize },
    #[error("configuration has length {got}, expected {expected}")]
    ConfigLengthMismatch { got: usize, expected: usize },
    #[error("vertex {0} is initially active but is not an OR vertex")]
    ActiveNonOrVertex(usize),
    #[error("invalid character {0:?} in configuration bit string")]
    BadBit(char),
    #[error("unknown rule {0:?} (expected and, or, bootstrap or majority)")]
    UnknownRule(String),
}

/// Simple undirected graph in compressed adjacency form.
///
/// Neighbor lists are sorted and duplicate-free, and never contain the
/// vertex itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges, in either
    /// orientation, are collapsed.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, NetError> {
        if n == 0 {
            return Err(NetError::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(NetError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(NetError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * edges.len());
        offsets.push(0);
        for mut list in adjacency {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        Ok(Graph { offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Local transition rule of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    /// Strict-majority activation; active vertices never deactivate.
    Bootstrap,
    /// Strict majority of the neighborhood, own state kept on a tie.
    SimpleMajority,
    And,
    Or,
}

impl RuleKind {
    pub const ALL: [RuleKind; 4] = [
        RuleKind::Bootstrap,
        RuleKind::SimpleMajority,
        RuleKind::And,
        RuleKind::Or,
    ];

    pub fn token(self) -> &'static str {
        match self {
            RuleKind::Bootstrap => "bootstrap",
            RuleKind::SimpleMajority => "majority",
            RuleKind::And => "and",
            RuleKind::Or => "or",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for RuleKind {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bootstrap" => Ok(RuleKind::Bootstrap),
            "majority" | "simple-majority" => Ok(RuleKind::SimpleMajority),
            "and" => Ok(RuleKind::And),
            "or" => Ok(RuleKind::Or),
            _ => Err(NetError::UnknownRule(s.to_string())),
        }
    }
}

/// Evaluates one local rule given the vertex state and how many of its
/// `degree` neighbors are active.
///
/// Majority comparisons use `2 * active` against `degree`. On an isolated
/// vertex both majority rules keep the current state, `And` yields 1 and
/// `Or` yields 0.
pub fn eval_local_rule(
    rule: RuleKind,
    self_state: bool,
    active_neighbors: usize,
    degree: usize,
) -> Result<bool, NetError> {
    if active_neighbors > degree {
        return Err(NetError::CountExceedsDegree {
            active: active_neighbors,
            degree,
        });
    }
    Ok(eval_unchecked(rule, self_state, active_neighbors, degree))
}

#[inline]
pub(crate) fn eval_unchecked(rule: RuleKind, self_state: bool, active: usize, degree: usize) -> bool {
    match rule {
        RuleKind::Bootstrap => self_state || 2 * active > degree,
        RuleKind::SimpleMajority => match (2 * active).cmp(&degree) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self_state,
        },
        RuleKind::And => active == degree,
        RuleKind::Or => active >= 1,
    }
}

/// A graph together with its per-vertex rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkSpec {
    graph: Graph,
    rules: Vec<RuleKind>,
    and_set: Vec<usize>,
    or_set: Vec<usize>,
}

impl NetworkSpec {
    pub fn new(graph: Graph, rules: Vec<RuleKind>) -> Result<Self, NetError> {
        if rules.len() != graph.n() {
            return Err(NetError::RuleLengthMismatch {
                got: rules.len(),
                expected: graph.n(),
            });
        }
        let select = |kind| {
            rules
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == kind)
                .map(|(v, _)| v)
                .collect::<Vec<_>>()
        };
        let and_set = select(RuleKind::And);
        let or_set = select(RuleKind::Or);
        Ok(NetworkSpec {
            graph,
            rules,
            and_set,
            or_set,
        })
    }

    pub fn uniform(graph: Graph, rule: RuleKind) -> Self {
        let n = graph.n();
        Self::new(graph, vec![rule; n]).expect("uniform rule vector has length n")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rules(&self) -> &[RuleKind] {
        &self.rules
    }

    pub fn rule(&self, v: usize) -> RuleKind {
        self.rules[v]
    }

    /// Vertices whose rule is `And`, ascending.
    pub fn and_set(&self) -> &[usize] {
        &self.and_set
    }

    /// Vertices whose rule is `Or`, ascending.
    pub fn or_set(&self) -> &[usize] {
        &self.or_set
    }

    /// True when every vertex runs `And` or `Or`.
    pub fn is_and_or(&self) -> bool {
        self.and_set.len() + self.or_set.len() == self.n()
    }

    pub fn is_uniform(&self, rule: RuleKind) -> bool {
        self.rules.iter().all(|&r| r == rule)
    }
}

/// Checks an initial configuration against a network. With `enforce_or_only`
/// on an AND/OR network, every initially active vertex must be an OR vertex.
pub fn validate_initial_config(
    network: &NetworkSpec,
    config: &Configuration,
    enforce_or_only: bool,
) -> Result<(), NetError> {
    if config.len() != network.n() {
        return Err(NetError::ConfigLengthMismatch {
            got: config.len(),
            expected: network.n(),
        });
    }
    if enforce_or_only && network.is_and_or() {
        if let Some(v) = config.ones().find(|&v| network.rule(v) != RuleKind::Or) {
            return Err(NetError::ActiveNonOrVertex(v));
        }
    }
    Ok(())
}

const WORD: usize = 64;

/// Fixed-length bit vector, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    len: usize,
    words: Vec<u64>,
}

impl Configuration {
    pub fn zeros(len: usize) -> Self {
        Configuration {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut c = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            c.set(i, b);
        }
        c
    }

    pub fn from_active(len: usize, active: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::zeros(len);
        for v in active {
            c.set(v, true);
        }
        c
    }

    /// Parses a string of `0`/`1` characters, vertex 0 first.
    pub fn parse_bits(s: &str) -> Result<Self, NetError> {
        let s = s.trim();
        let mut c = Self::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(i, true),
                other => return Err(NetError::BadBit(other)),
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Number of active vertices among `vertices`.
    #[inline]
    pub fn count_among(&self, vertices: &[usize]) -> usize {
        vertices.iter().filter(|&&v| self.get(v)).count()
    }

    /// True when every bit set here is also set in `other`.
    pub fn is_subset_of(&self, other: &Configuration) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_bits(s)
    }
}
