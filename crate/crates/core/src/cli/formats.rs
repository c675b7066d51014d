//! Plain-text instance formats.
//!
//! All formats accept `#` comments and blank lines. Emitters can prepend a
//! comment header, which parsers skip, so every emitted file re-parses to
//! the value it was written from.
//!
//! | file      | contents                                                       |
//! |-----------|----------------------------------------------------------------|
//! | graph     | `n m`, then `m` lines `u v` (0-based)                          |
//! | rules     | one token per vertex from `and`, `or`, `bootstrap`, `majority` |
//! | schedule  | `parallel`, `sequential v0 v1 …`, or one block per line        |
//! | circuit   | `input x`, `and g a b`, `or g a b`, `output g`                 |
//! | initial   | a bit string of length `n`                                     |
//! | target    | a vertex id                                                    |

use std::fmt::Write as _;

use thiserror::Error;

use crate::net::{Configuration, Graph, NetError, RuleKind};
use crate::reductions::{CircuitError, Gate, GateKind, MonotoneCircuit};
use crate::schedule::{ScheduleError, UpdateSchedule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {error}")]
    Net { line: usize, error: NetError },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("line {line}: {error}")]
    Circuit { line: usize, error: CircuitError },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {token:?}")))
}

fn header(out: &mut String, header: Option<&str>) {
    if let Some(h) = header {
        for l in h.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, head) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing \"n m\" header".into()))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(syntax(hline, format!("expected \"n m\", found {head:?}")));
    }
    let n = parse_usize(hline, fields[0], "vertex count")?;
    let m = parse_usize(hline, fields[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(syntax(line, format!("expected an edge \"u v\", found {text:?}")));
        }
        if edges.len() == m {
            return Err(syntax(line, format!("more than the declared {m} edges")));
        }
        let u = parse_usize(line, fields[0], "vertex id")?;
        let v = parse_usize(line, fields[1], "vertex id")?;
        for w in [u, v] {
            if w >= n {
                return Err(FormatError::Net {
                    line,
                    error: NetError::VertexOutOfRange { vertex: w, n },
                });
            }
        }
        if u == v {
            return Err(FormatError::Net {
                line,
                error: NetError::SelfLoop(u),
            });
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(FormatError::Truncated(format!(
            "declared {m} edges, found {} (last line {last_line})",
            edges.len()
        )));
    }
    Graph::new(n, &edges).map_err(|error| FormatError::Net { line: hline, error })
}

pub fn emit_graph(graph: &Graph, head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    let edges = graph.edges();
    let _ = writeln!(out, "{} {}", graph.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_rules(text: &str) -> Result<Vec<RuleKind>, FormatError> {
    let mut rules = Vec::new();
    for (line, content) in content_lines(text) {
        for token in content.split_whitespace() {
            rules.push(token.parse().map_err(|error| FormatError::Net { line, error })?);
        }
    }
    Ok(rules)
}

pub fn emit_rules(rules: &[RuleKind], head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    for r in rules {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn parse_schedule(text: &str, n: usize) -> Result<UpdateSchedule, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some(&(first_line, first)) = lines.first() else {
        return Err(FormatError::Truncated("empty schedule".into()));
    };
    let mut tokens = first.split_whitespace();
    match tokens.next() {
        Some("parallel") => {
            if tokens.next().is_some() || lines.len() > 1 {
                return Err(syntax(first_line, "\"parallel\" takes no arguments"));
            }
            Ok(UpdateSchedule::parallel(n)?)
        }
        Some("sequential") => {
            let mut order = Vec::new();
            for (i, &(line, text)) in lines.iter().enumerate() {
                let rest = if i == 0 { &text["sequential".len()..] } else { text };
                for t in rest.split_whitespace() {
                    order.push(parse_usize(line, t, "vertex id")?);
                }
            }
            if order.len() != n {
                return Err(syntax(
                    first_line,
                    format!("sequential order lists {} vertices, expected {n}", order.len()),
                ));
            }
            Ok(UpdateSchedule::sequential(&order)?)
        }
        _ => {
            let blocks = lines
                .iter()
                .map(|&(line, text)| {
                    text.split_whitespace()
                        .map(|t| parse_usize(line, t, "vertex id"))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(UpdateSchedule::new(n, blocks)?)
        }
    }
}

pub fn emit_schedule(schedule: &UpdateSchedule, head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    let n = schedule.n();
    let blocks = schedule.blocks();
    if blocks.len() == 1 && blocks[0].iter().copied().eq(0..n) {
        out.push_str("parallel\n");
    } else if schedule.word_length() == n && blocks.iter().all(|b| b.len() == 1) {
        out.push_str("sequential");
        for b in blocks {
            let _ = write!(out, " {}", b[0]);
        }
        out.push('\n');
    } else {
        for b in blocks {
            let line: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

/// Parses a netlist. Gates with more than two operands are decomposed into a
/// left-leaning chain of fan-in-2 gates named `<name>.1`, `<name>.2`, ….
pub fn parse_circuit(text: &str) -> Result<MonotoneCircuit, FormatError> {
    let mut inputs = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut gate_lines = Vec::new();
    let mut output: Option<(usize, String)> = None;
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "input" => {
                if fields.len() < 2 {
                    return Err(syntax(line, "input needs a name"));
                }
                inputs.extend(fields[1..].iter().map(|s| s.to_string()));
            }
            "and" | "or" => {
                let kind = if fields[0] == "and" {
                    GateKind::And2
                } else {
                    GateKind::Or2
                };
                if fields.len() < 4 {
                    return Err(syntax(
                        line,
                        format!("{} needs a name and at least two operands", fields[0]),
                    ));
                }
                let name = fields[1];
                let operands = &fields[2..];
                let mut acc = operands[0].to_string();
                for (k, operand) in operands[1..].iter().enumerate() {
                    let last = k + 2 == operands.len();
                    let gname = if last {
                        name.to_string()
                    } else {
                        format!("{name}.{}", k + 1)
                    };
                    gates.push(Gate::new(gname.clone(), kind, acc, *operand));
                    gate_lines.push(line);
                    acc = gname;
                }
            }
            "output" => {
                if fields.len() != 2 {
                    return Err(syntax(line, "output takes exactly one name"));
                }
                if output.is_some() {
                    return Err(syntax(line, "second output declaration"));
                }
                output = Some((line, fields[1].to_string()));
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }
    let (out_line, output) = output.ok_or_else(|| FormatError::Truncated("no output declared".into()))?;
    MonotoneCircuit::new(inputs.clone(), gates.clone(), output).map_err(|error| {
        let line = match &error {
            CircuitError::UndefinedOperand { gate, .. } | CircuitError::DuplicateName(gate) => gates
                .iter()
                .position(|g| &g.name == gate)
                .map(|i| gate_lines[i])
                .unwrap_or(0),
            CircuitError::UnknownOutput(_) => out_line,
            _ => 0,
        };
        FormatError::Circuit { line, error }
    })
}

pub fn emit_circuit(circuit: &MonotoneCircuit, head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    out.push_str(&circuit.to_string());
    out
}

pub fn parse_config(text: &str) -> Result<Configuration, FormatError> {
    let mut bits = String::new();
    let mut first = 0;
    for (line, content) in content_lines(text) {
        if first == 0 {
            first = line;
        }
        bits.push_str(content);
    }
    let bits: String = bits.split_whitespace().collect();
    Configuration::parse_bits(&bits).map_err(|error| FormatError::Net { line: first, error })
}

pub fn emit_config(config: &Configuration, head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    let _ = writeln!(out, "{config}");
    out
}

pub fn parse_target(text: &str) -> Result<usize, FormatError> {
    let mut lines = content_lines(text);
    let (line, content) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing target vertex".into()))?;
    if let Some((extra, _)) = lines.next() {
        return Err(syntax(extra, "target file holds a single vertex id"));
    }
    parse_usize(line, content, "target vertex id")
}

pub fn emit_target(target: usize, head: Option<&str>) -> String {
    let mut out = String::new();
    header(&mut out, head);
    let _ = writeln!(out, "{target}");
    out
}

/// Parses `x1=1,x2=0` (every input named) or a bit string in declaration
/// order.
pub fn parse_assignment(circuit: &MonotoneCircuit, text: &str) -> Result<Vec<bool>, FormatError> {
    let text = text.trim();
    let bad = |m: String| syntax(1, m);
    if !text.contains('=') {
        let c = Configuration::parse_bits(text).map_err(|error| FormatError::Net { line: 1, error })?;
        if c.len() != circuit.inputs().len() {
            return Err(bad(format!(
                "assignment has {} bits, circuit has {} inputs",
                c.len(),
                circuit.inputs().len()
            )));
        }
        return Ok(c.to_bools());
    }
    let mut values = vec![None; circuit.inputs().len()];
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| bad(format!("expected name=value, found {pair:?}")))?;
        let idx = circuit
            .inputs()
            .iter()
            .position(|i| i == name.trim())
            .ok_or_else(|| bad(format!("unknown input {name:?}")))?;
        values[idx] = Some(match value.trim() {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(bad(format!("value for {name} must be 0 or 1, found {other:?}"))),
        });
    }
    values
        .into_iter()
        .zip(circuit.inputs())
        .map(|(v, name)| {
            v.ok_or_else(|| FormatError::Circuit {
                line: 1,
                error: CircuitError::MissingInput(name.clone()),
            })
        })
        .collect()
}
